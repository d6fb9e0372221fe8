//! Coordinates, planes, half-integer gradings and the I/J pair-counting functions.
//!
//! Every geometric quantity is stored in doubled integer coordinates: a lattice
//! point `p` becomes `2p` and the centre of cell `c` becomes `2c + 1`, so sums
//! mixing states and markings stay integral.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_rational::Rational64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i % 3]
    }

    /// The two coordinate planes containing this axis, in tensor-factor order:
    /// y → (xy, yz), z → (yz, zx), x → (zx, xy).
    pub fn planes(self) -> (Plane, Plane) {
        match self {
            Axis::Y => (Plane::XY, Plane::YZ),
            Axis::Z => (Plane::YZ, Plane::ZX),
            Axis::X => (Plane::ZX, Plane::XY),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }

    pub fn parse(s: &str) -> Option<Axis> {
        match s {
            "x" | "X" => Some(Axis::X),
            "y" | "Y" => Some(Axis::Y),
            "z" | "Z" => Some(Axis::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An ordered pair of coordinate axes. The first axis carries "rows"
/// (under-crossing segments), the second "columns" (over-crossing segments).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Plane {
    XY,
    YZ,
    ZX,
}

impl Plane {
    pub const ALL: [Plane; 3] = [Plane::XY, Plane::YZ, Plane::ZX];

    pub fn axes(self) -> (Axis, Axis) {
        match self {
            Plane::XY => (Axis::X, Axis::Y),
            Plane::YZ => (Axis::Y, Axis::Z),
            Plane::ZX => (Axis::Z, Axis::X),
        }
    }

    /// The dropped coordinate.
    pub fn normal(self) -> Axis {
        match self {
            Plane::XY => Axis::Z,
            Plane::YZ => Axis::X,
            Plane::ZX => Axis::Y,
        }
    }

    pub fn project<T: Copy>(self, p: [T; 3]) -> [T; 2] {
        let (a, b) = self.axes();
        [p[a.index()], p[b.index()]]
    }

    pub fn name(self) -> &'static str {
        match self {
            Plane::XY => "xy",
            Plane::YZ => "yz",
            Plane::ZX => "zx",
        }
    }

    pub fn parse(s: &str) -> Option<Plane> {
        match s.to_ascii_lowercase().as_str() {
            "xy" => Some(Plane::XY),
            "yz" => Some(Plane::YZ),
            "zx" => Some(Plane::ZX),
            _ => None,
        }
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A unit cell `[x,x+1]×[y,y+1]×[z,z+1]` of the cube, addressed by its lower corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell3 {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl Cell3 {
    pub const fn new(x: usize, y: usize, z: usize) -> Self {
        Cell3 { x, y, z }
    }

    pub fn coords(self) -> [usize; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_coords(c: [usize; 3]) -> Self {
        Cell3::new(c[0], c[1], c[2])
    }

    pub fn coord(self, axis: Axis) -> usize {
        self.coords()[axis.index()]
    }

    /// Doubled coordinates of the cell centre.
    pub fn doubled(self) -> [i64; 3] {
        self.coords().map(|c| 2 * c as i64 + 1)
    }
}

impl fmt::Display for Cell3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

/// An integer lattice point of the cube (state points live here).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint3 {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl LatticePoint3 {
    pub const fn new(x: usize, y: usize, z: usize) -> Self {
        LatticePoint3 { x, y, z }
    }

    pub fn coords(self) -> [usize; 3] {
        [self.x, self.y, self.z]
    }

    pub fn doubled(self) -> [i64; 3] {
        self.coords().map(|c| 2 * c as i64)
    }
}

/// A value in ½ℤ, stored as twice the value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfGrading {
    pub twice: i64,
}

impl HalfGrading {
    pub const ZERO: HalfGrading = HalfGrading { twice: 0 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfGrading { twice }
    }

    pub const fn from_int(v: i64) -> Self {
        HalfGrading { twice: 2 * v }
    }

    /// Exact conversion; `None` if `r` is not a half-integer.
    pub fn from_rational(r: Rational64) -> Option<Self> {
        let t = r * Rational64::from_integer(2);
        t.is_integer().then(|| HalfGrading::from_twice(t.to_integer()))
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_rational(self) -> Rational64 {
        Rational64::new(self.twice, 2)
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.split_once('/') {
            Some((num, "2")) => num.trim().parse().ok().map(HalfGrading::from_twice),
            Some(_) => None,
            None => s.trim().parse().ok().map(HalfGrading::from_int),
        }
    }
}

impl fmt::Display for HalfGrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl Add for HalfGrading {
    type Output = HalfGrading;
    fn add(self, o: HalfGrading) -> HalfGrading {
        HalfGrading::from_twice(self.twice + o.twice)
    }
}

impl AddAssign for HalfGrading {
    fn add_assign(&mut self, o: HalfGrading) {
        self.twice += o.twice;
    }
}

impl Sub for HalfGrading {
    type Output = HalfGrading;
    fn sub(self, o: HalfGrading) -> HalfGrading {
        HalfGrading::from_twice(self.twice - o.twice)
    }
}

impl Neg for HalfGrading {
    type Output = HalfGrading;
    fn neg(self) -> HalfGrading {
        HalfGrading::from_twice(-self.twice)
    }
}

/// A formal ℚ-combination of points in doubled coordinates whose coefficients
/// are half-integers (stored doubled), e.g. `s − ½(Z + X)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalPointSum<const D: usize> {
    terms: Vec<([i64; D], i64)>,
}

impl<const D: usize> FormalPointSum<D> {
    pub fn new() -> Self {
        FormalPointSum { terms: Vec::new() }
    }

    /// Each point with coefficient `coeff`.
    pub fn from_points<I: IntoIterator<Item = [i64; D]>>(points: I, coeff: HalfGrading) -> Self {
        FormalPointSum {
            terms: points.into_iter().map(|p| (p, coeff.twice)).collect(),
        }
    }

    pub fn add_points<I: IntoIterator<Item = [i64; D]>>(mut self, points: I, coeff: HalfGrading) -> Self {
        self.terms.extend(points.into_iter().map(|p| (p, coeff.twice)));
        self
    }

    pub fn plus(mut self, other: &Self) -> Self {
        self.terms.extend_from_slice(&other.terms);
        self
    }

    pub fn minus(mut self, other: &Self) -> Self {
        self.terms.extend(other.terms.iter().map(|&(p, c)| (p, -c)));
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = ([i64; D], HalfGrading)> + '_ {
        self.terms.iter().map(|&(p, c)| (p, HalfGrading::from_twice(c)))
    }
}

impl FormalPointSum<3> {
    pub fn project(&self, plane: Plane) -> FormalPointSum<2> {
        FormalPointSum {
            terms: self.terms.iter().map(|&(p, c)| (plane.project(p), c)).collect(),
        }
    }
}

/// Number of pairs `(a, b)` with `a` strictly south-west of `b` in the plane.
pub fn i_pair_2d(a: &[[i64; 2]], b: &[[i64; 2]]) -> usize {
    a.iter()
        .map(|p| b.iter().filter(|q| p[0] < q[0] && p[1] < q[1]).count())
        .sum()
}

/// `I_P(A, B)`: pairs whose projections to `plane` satisfy `a < b` in both coordinates.
pub fn i_pair(a: &[[i64; 3]], b: &[[i64; 3]], plane: Plane) -> usize {
    i_pair_2d(&project_points(a, plane), &project_points(b, plane))
}

/// `J(A, B) = (I(A, B) + I(B, A)) / 2`, extended bilinearly.
pub fn j_pair_2d(a: &FormalPointSum<2>, b: &FormalPointSum<2>) -> Rational64 {
    let mut acc: i64 = 0;
    for &(p, ca) in &a.terms {
        for &(q, cb) in &b.terms {
            let both = i64::from(p[0] < q[0] && p[1] < q[1]) + i64::from(q[0] < p[0] && q[1] < p[1]);
            acc += ca * cb * both;
        }
    }
    // ca, cb are doubled and J carries its own ½.
    Rational64::new(acc, 8)
}

pub fn j_pair(a: &FormalPointSum<3>, b: &FormalPointSum<3>, plane: Plane) -> Rational64 {
    j_pair_2d(&a.project(plane), &b.project(plane))
}

pub fn project_points(points: &[[i64; 3]], plane: Plane) -> Vec<[i64; 2]> {
    points.iter().map(|&p| plane.project(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> HalfGrading {
        HalfGrading::from_int(1)
    }

    #[test]
    fn i_pair_examples() {
        assert_eq!(i_pair(&[[0, 0, 0]], &[[1, 1, 1]], Plane::XY), 1);
        assert_eq!(i_pair(&[[1, 1, 1]], &[[0, 0, 0]], Plane::XY), 0);
        assert_eq!(i_pair(&[[0, 1, 0]], &[[1, 0, 1]], Plane::XY), 0);
        // same x coordinate: not strictly less
        assert_eq!(i_pair(&[[0, 0, 0]], &[[0, 1, 1]], Plane::XY), 0);
        assert_eq!(i_pair(&[[5, 0, 0]], &[[0, 1, 1]], Plane::YZ), 1);
    }

    #[test]
    fn zx_count_is_symmetric_in_coordinate_order() {
        let a = [[3, 0, 1], [0, 2, 4]];
        let b = [[4, 1, 2], [1, 1, 5]];
        let xz = |v: &[[i64; 3]]| v.iter().map(|p| [p[0], p[2]]).collect::<Vec<_>>();
        assert_eq!(i_pair(&a, &b, Plane::ZX), i_pair_2d(&xz(&a), &xz(&b)));
    }

    #[test]
    fn j_of_self_for_diagonal_points() {
        let s = FormalPointSum::<2>::from_points([[0, 0], [2, 2]], one());
        assert_eq!(j_pair_2d(&s, &s), Rational64::from_integer(1));
    }

    #[test]
    fn j_half_coefficients() {
        let a = FormalPointSum::<2>::from_points([[0, 0]], HalfGrading::from_twice(1));
        let b = FormalPointSum::<2>::from_points([[1, 1]], one());
        assert_eq!(j_pair_2d(&a, &b), Rational64::new(1, 4));
    }

    #[test]
    fn half_grading_display_and_parse() {
        for t in -7..7 {
            let h = HalfGrading::from_twice(t);
            assert_eq!(HalfGrading::parse(&h.to_string()), Some(h));
        }
        assert_eq!(HalfGrading::from_twice(-1).to_string(), "-1/2");
        assert_eq!(HalfGrading::from_rational(Rational64::new(1, 3)), None);
    }

    #[test]
    fn plane_and_axis_tables() {
        for axis in Axis::ALL {
            let (p, q) = axis.planes();
            assert_ne!(p, q);
            for pl in [p, q] {
                let (a, b) = pl.axes();
                assert!(a == axis || b == axis);
                assert_ne!(pl.normal(), a);
                assert_ne!(pl.normal(), b);
            }
        }
    }
}
