//! Monomials and GF(2)-chains with monomial coefficients.

use std::collections::BTreeSet;
use std::fmt;

/// Exponent vector over the ring variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn bump(&mut self, var: usize) {
        self.0[var] += 1;
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate().filter(|(_, &e)| e > 0) {
            if !first {
                f.write_str("·")?;
            }
            first = false;
            write!(f, "v{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A finite GF(2)-sum of `monomial · state` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalChain<S: Ord> {
    terms: BTreeSet<(Monomial, S)>,
}

impl<S: Ord> Default for FormalChain<S> {
    fn default() -> Self {
        FormalChain { terms: BTreeSet::new() }
    }
}

impl<S: Ord + Clone> FormalChain<S> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add one term; equal terms cancel in pairs.
    pub fn add_term(&mut self, m: Monomial, s: S) {
        let key = (m, s);
        if !self.terms.remove(&key) {
            self.terms.insert(key);
        }
    }

    pub fn add_scaled(&mut self, m: &Monomial, other: &FormalChain<S>) {
        for (mm, s) in &other.terms {
            self.add_term(m.mul(mm), s.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &(Monomial, S)> {
        self.terms.iter()
    }

    pub fn map_terms<T: Ord + Clone>(&self, f: impl Fn(&Monomial, &S) -> (Monomial, T)) -> FormalChain<T> {
        let mut out = FormalChain::new();
        for (m, s) in &self.terms {
            let (m2, t) = f(m, s);
            out.add_term(m2, t);
        }
        out
    }
}
