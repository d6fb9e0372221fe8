//! Homology over GF(2), tabulated by (Maslov, Alexander) bigrading.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::cubediag::CubeDiagram;
use crate::error::{Error, Result};
use crate::griddiag::OrientedGridDiagram;
use crate::lattice::{Axis, HalfGrading};
use crate::perm::factorial;

use super::differential::{grid_differential, Variant};
use super::kernel::CubeKernel;
use super::grading::{cube_gradings, grid_gradings, AlexanderConvention};
use super::rank::{f2_rank, SparseF2Matrix};
use super::state::{psi, CubeState, GridState};

pub type Bigrading = (HalfGrading, HalfGrading);

/// Dimensions of a bigraded GF(2) vector space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedDimTable {
    entries: BTreeMap<Bigrading, usize>,
}

impl BigradedDimTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries<I: IntoIterator<Item = (Bigrading, usize)>>(it: I) -> Self {
        let mut t = Self::new();
        for (k, v) in it {
            t.add(k, v);
        }
        t
    }

    /// Integer-graded convenience constructor.
    pub fn from_ints(it: &[((i64, i64), usize)]) -> Self {
        Self::from_entries(it.iter().map(|&((m, a), d)| ((HalfGrading::from_int(m), HalfGrading::from_int(a)), d)))
    }

    pub fn add(&mut self, k: Bigrading, d: usize) {
        if d > 0 {
            *self.entries.entry(k).or_default() += d;
        }
    }

    pub fn get(&self, m: HalfGrading, a: HalfGrading) -> usize {
        self.entries.get(&(m, a)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Bigrading, &usize)> {
        self.entries.iter()
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    /// Tensor product of bigraded spaces.
    pub fn product(&self, o: &Self) -> Self {
        let mut t = Self::new();
        for (&(m1, a1), &d1) in &self.entries {
            for (&(m2, a2), &d2) in &o.entries {
                t.add((m1 + m2, a1 + a2), d1 * d2);
            }
        }
        t
    }

    pub fn shifted(&self, dm: HalfGrading, da: HalfGrading) -> Self {
        Self::from_entries(self.entries.iter().map(|(&(m, a), &d)| ((m + dm, a + da), d)))
    }

    /// Multiply by `(1 + u)^k` with u at bigrading (−1, −1).
    pub fn times_one_plus_u(&self, k: usize) -> Self {
        let v = Self::from_ints(&[((0, 0), 1), ((-1, -1), 1)]);
        (0..k).fold(self.clone(), |t, _| t.product(&v))
    }

    /// Σ (−1)^M t^A as a map from 2A to coefficient (zero coefficients dropped).
    pub fn euler_characteristic(&self) -> BTreeMap<i64, i64> {
        let mut out: BTreeMap<i64, i64> = BTreeMap::new();
        for (&(m, a), &d) in &self.entries {
            let sign = if (m.twice / 2) % 2 == 0 { 1 } else { -1 };
            *out.entry(a.twice).or_default() += sign * d as i64;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Equality after translating one table so the lowest entries coincide.
    pub fn equal_up_to_shift(&self, o: &Self) -> bool {
        match (self.entries.keys().next(), o.entries.keys().next()) {
            (Some(&(m1, a1)), Some(&(m2, a2))) => self.shifted(m2 - m1, a2 - a1) == *o,
            (None, None) => true,
            _ => false,
        }
    }
}

impl fmt::Display for BigradedDimTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(m, a), &d) in self.entries.iter().rev() {
            writeln!(f, "M={m} A={a} dim={d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomologyTable {
    Bigraded(BigradedDimTable),
    /// Filtered-hat homology is graded by Maslov degree only.
    Maslov(BTreeMap<HalfGrading, usize>),
}

impl HomologyTable {
    pub fn total(&self) -> usize {
        match self {
            HomologyTable::Bigraded(t) => t.total(),
            HomologyTable::Maslov(t) => t.values().sum(),
        }
    }

    pub fn bigraded(&self) -> Option<&BigradedDimTable> {
        match self {
            HomologyTable::Bigraded(t) => Some(t),
            HomologyTable::Maslov(_) => None,
        }
    }
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologyTable::Bigraded(t) => write!(f, "{t}"),
            HomologyTable::Maslov(t) => {
                for (m, d) in t.iter().rev() {
                    writeln!(f, "M={m} A=* dim={d}")?;
                }
                Ok(())
            }
        }
    }
}

/// A finite GF(2) chain complex split into grading blocks.
struct BlockComplex<K> {
    keys: Vec<K>,
    /// Boundary of each generator, as generator indices.
    boundary: Vec<Vec<u32>>,
}

impl<K: Ord + Copy + std::hash::Hash + fmt::Debug + Send + Sync> BlockComplex<K> {
    fn homology(&self, down: impl Fn(K) -> K + Sync) -> Result<BTreeMap<K, usize>> {
        let mut blocks: BTreeMap<K, Vec<usize>> = BTreeMap::new();
        for (g, &k) in self.keys.iter().enumerate() {
            blocks.entry(k).or_default().push(g);
        }
        let mut local = vec![0u32; self.keys.len()];
        for gens in blocks.values() {
            for (i, &g) in gens.iter().enumerate() {
                local[g] = i as u32;
            }
        }
        for (g, b) in self.boundary.iter().enumerate() {
            let want = down(self.keys[g]);
            if let Some(&t) = b.iter().find(|&&t| self.keys[t as usize] != want) {
                return Err(Error::Invariant(format!(
                    "differential is not homogeneous: {:?} → {:?}",
                    self.keys[g], self.keys[t as usize]
                )));
            }
        }
        let ranks: HashMap<K, usize> = blocks
            .par_iter()
            .map(|(&k, gens)| {
                let ncols = blocks.get(&down(k)).map_or(0, Vec::len);
                let mut m = SparseF2Matrix::new(ncols);
                for &g in gens {
                    m.push_row(self.boundary[g].iter().map(|&t| local[t as usize]).collect());
                }
                (k, f2_rank(&m))
            })
            .collect();
        let mut incoming: HashMap<K, usize> = HashMap::new();
        for (&k, &r) in &ranks {
            *incoming.entry(down(k)).or_default() += r;
        }
        Ok(blocks
            .iter()
            .map(|(&k, gens)| (k, gens.len() - ranks[&k] - incoming.get(&k).copied().unwrap_or(0)))
            .filter(|&(_, d)| d > 0)
            .collect())
    }
}

fn table_from<K>(variant: Variant, dims: BTreeMap<K, usize>, split: impl Fn(K) -> Bigrading) -> HomologyTable {
    match variant {
        Variant::FilteredHat => {
            let mut t = BTreeMap::new();
            for (k, d) in dims {
                *t.entry(split(k).0).or_default() += d;
            }
            HomologyTable::Maslov(t)
        }
        _ => HomologyTable::Bigraded(BigradedDimTable::from_entries(dims.into_iter().map(|(k, d)| (split(k), d)))),
    }
}

fn check_variant(variant: Variant) -> Result<()> {
    if variant == Variant::Minus {
        return Err(Error::InvalidInput(
            "homology of the minus complex needs module structure over the polynomial ring; use tilde or filtered-hat".into(),
        ));
    }
    Ok(())
}

fn down_for(variant: Variant) -> impl Fn(Bigrading) -> Bigrading + Sync {
    move |(m, a)| {
        let m = m - HalfGrading::from_int(1);
        if variant == Variant::FilteredHat {
            (m, HalfGrading::ZERO)
        } else {
            (m, a)
        }
    }
}

pub fn grid_homology(g: &OrientedGridDiagram, variant: Variant, conv: AlexanderConvention) -> Result<HomologyTable> {
    check_variant(variant)?;
    let n = g.n();
    let states: Vec<GridState> = (0..factorial(n)).map(|i| GridState::from_index(n, i)).collect();
    let hat = variant == Variant::FilteredHat;
    let key = |s: &GridState| {
        let (m, a) = grid_gradings(g, s, conv);
        (m, if hat { HalfGrading::ZERO } else { a })
    };
    let cx = BlockComplex {
        keys: states.par_iter().map(key).collect(),
        boundary: states
            .par_iter()
            .map(|s| grid_differential(g, s, variant).terms().map(|(_, t)| t.index() as u32).collect())
            .collect(),
    };
    Ok(table_from(variant, cx.homology(down_for(variant))?, |k| k))
}

/// Gradings of every cube state, tabulated through the two projections.
pub fn cube_grading_table(c: &CubeDiagram, axis: Axis, conv: AlexanderConvention) -> Vec<Bigrading> {
    let n = c.n();
    let f = factorial(n);
    let (p1, p2) = axis.planes();
    // plane gradings depend only on the projected state: one representative per projection
    let id = GridState::new((0..n as u8).collect());
    let per_plane = |first: bool| -> Vec<(HalfGrading, HalfGrading)> {
        (0..f)
            .into_par_iter()
            .map(|i| {
                let gs = GridState::from_index(n, i);
                let s = if first { psi(axis, &gs, &id) } else { psi(axis, &id, &gs) };
                let g = cube_gradings(c, &s, axis, conv);
                let (_, m, a) = g.parts[usize::from(!first)];
                (m, a)
            })
            .collect()
    };
    let (t1, t2) = (per_plane(true), per_plane(false));
    (0..f * f)
        .into_par_iter()
        .map(|i| {
            let s = CubeState::from_index(n, i);
            let (m1, a1) = t1[s.project(p1).index()];
            let (m2, a2) = t2[s.project(p2).index()];
            (m1 + m2, a1 + a2)
        })
        .collect()
}

pub fn cube_homology(c: &CubeDiagram, axis: Axis, variant: Variant, conv: AlexanderConvention) -> Result<HomologyTable> {
    check_variant(variant)?;
    let n = c.n();
    let total = factorial(n) * factorial(n);
    let mut keys = cube_grading_table(c, axis, conv);
    if variant == Variant::FilteredHat {
        keys.iter_mut().for_each(|k| k.1 = HalfGrading::ZERO);
    }
    let kernel = CubeKernel::new(c, axis, variant);
    let boundary = (0..total)
        .into_par_iter()
        .map_init(Vec::new, |buf, i| {
            kernel.boundary(i, buf);
            buf.clone()
        })
        .collect();
    let cx = BlockComplex { keys, boundary };
    Ok(table_from(variant, cx.homology(down_for(variant))?, |k| k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use AlexanderConvention::*;

    #[test]
    fn g_u2_tilde() {
        let t = grid_homology(&fixtures::g_u2(), Variant::Tilde, Literal).unwrap();
        assert_eq!(t, HomologyTable::Bigraded(BigradedDimTable::from_ints(&[((0, 1), 1), ((-1, 0), 1)])));
    }

    #[test]
    fn u2_cube_tilde() {
        let c = fixtures::u2();
        let lit = cube_homology(&c, Axis::Y, Variant::Tilde, Literal).unwrap();
        assert_eq!(lit.bigraded().unwrap(), &BigradedDimTable::from_ints(&[((0, 2), 1), ((-1, 1), 2), ((-2, 0), 1)]));
        let norm = cube_homology(&c, Axis::Y, Variant::Tilde, Normalized).unwrap();
        assert_eq!(norm.bigraded().unwrap(), &BigradedDimTable::from_ints(&[((0, 0), 1), ((-1, -1), 2), ((-2, -2), 1)]));
    }

    #[test]
    fn gt5_grid_tilde_total_and_euler() {
        let t = grid_homology(&fixtures::gt5_grid(), Variant::Tilde, Normalized).unwrap();
        assert_eq!(t.total(), 48);
        let e = t.bigraded().unwrap().euler_characteristic();
        // unit multiple of (1 − t⁻¹)⁴ (t − 1 + t⁻¹)
        let target = super::tests_support::trefoil_times_v4();
        assert!(super::tests_support::unit_multiple(&e, &target), "{e:?}");
    }

    #[test]
    fn minus_is_rejected() {
        assert!(grid_homology(&fixtures::g_u2(), Variant::Minus, Literal).is_err());
    }

    #[test]
    fn hat_table_prints_star() {
        let t = grid_homology(&fixtures::g_u2(), Variant::FilteredHat, Normalized).unwrap();
        assert!(t.to_string().contains("A=*"));
    }
}

/// Laurent polynomials in t^{1/2} keyed by twice the exponent (used by tests and the self-test).
pub mod tests_support {
    use std::collections::BTreeMap;

    pub fn mul(a: &BTreeMap<i64, i64>, b: &BTreeMap<i64, i64>) -> BTreeMap<i64, i64> {
        let mut out: BTreeMap<i64, i64> = BTreeMap::new();
        for (&ea, &ca) in a {
            for (&eb, &cb) in b {
                *out.entry(ea + eb).or_default() += ca * cb;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// (1 − t⁻¹)⁴ · (t − 1 + t⁻¹).
    pub fn trefoil_times_v4() -> BTreeMap<i64, i64> {
        let v: BTreeMap<i64, i64> = [(0, 1), (-2, -1)].into();
        let tref: BTreeMap<i64, i64> = [(2, 1), (0, -1), (-2, 1)].into();
        (0..4).fold(tref, |acc, _| mul(&acc, &v))
    }

    /// `a = ±t^k · b` for some half-integer k.
    pub fn unit_multiple(a: &BTreeMap<i64, i64>, b: &BTreeMap<i64, i64>) -> bool {
        let (Some((&ea, &ca)), Some((&eb, &cb))) = (a.iter().next(), b.iter().next()) else { return a.is_empty() && b.is_empty() };
        let sign = if ca == cb { 1 } else if ca == -cb { -1 } else { return false };
        a.len() == b.len() && b.iter().all(|(&e, &c)| a.get(&(e + ea - eb)) == Some(&(sign * c)))
    }
}
