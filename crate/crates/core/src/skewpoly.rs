//! The twisted polynomial ring `R = K[t;σ]` with `t·c = σ(c)·t`.
//!
//! Division is on the right: for `f ≠ 0` there are unique `q, r` with
//! `g = q·f + r` and `deg r < deg f`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::fields::{Elem, ExtensionTower, GaloisGenerator};
use crate::{par, Error, Result};

/// Degree of a skew polynomial; the zero polynomial sits below every
/// integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl std::ops::Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl PartialEq<usize> for Degree {
    fn eq(&self, other: &usize) -> bool {
        *self == Degree::Finite(*other)
    }
}

impl PartialOrd<usize> for Degree {
    fn partial_cmp(&self, other: &usize) -> Option<Ordering> {
        Some(self.cmp(&Degree::Finite(*other)))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A skew polynomial: coefficient `i` multiplies `t^i` (coefficients on the
/// left). Never stores trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkewPoly {
    twist: u32,
    coeffs: Vec<Elem>,
}

impl SkewPoly {
    /// Builds a polynomial for the ring whose generator has exponent `twist`.
    pub fn new(twist: u32, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly { twist, coeffs }
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            l => Degree::Finite(l - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }
}

/// `K[t;σ]` for a fixed tower and generator.
#[derive(Clone, Debug)]
pub struct SkewRing {
    tower: Arc<ExtensionTower>,
    gen: GaloisGenerator,
}

impl SkewRing {
    pub fn new(tower: Arc<ExtensionTower>, gen: GaloisGenerator) -> Self {
        SkewRing { tower, gen }
    }

    pub fn tower(&self) -> &Arc<ExtensionTower> {
        &self.tower
    }

    pub fn generator(&self) -> GaloisGenerator {
        self.gen
    }

    pub fn poly(&self, coeffs: Vec<Elem>) -> SkewPoly {
        SkewPoly::new(self.gen.exponent(), coeffs)
    }

    pub fn zero(&self) -> SkewPoly {
        self.poly(Vec::new())
    }

    pub fn one(&self) -> SkewPoly {
        self.constant(self.tower.top().one())
    }

    pub fn constant(&self, c: Elem) -> SkewPoly {
        self.poly(vec![c])
    }

    /// `c·t^i`.
    pub fn monomial(&self, c: Elem, i: usize) -> SkewPoly {
        let mut v = vec![Elem::ZERO; i + 1];
        v[i] = c;
        self.poly(v)
    }

    pub fn t(&self) -> SkewPoly {
        self.monomial(self.tower.top().one(), 1)
    }

    /// `t^m - a`.
    pub fn binomial(&self, m: usize, a: Elem) -> SkewPoly {
        let k = self.tower.top();
        let mut v = vec![Elem::ZERO; m + 1];
        v[0] = k.neg(a);
        v[m] = k.one();
        self.poly(v)
    }

    /// `σ^i(x)`.
    pub fn sigma_pow(&self, i: usize, x: Elem) -> Elem {
        self.gen.apply_pow(&self.tower, i as u64, x)
    }

    fn check(&self, f: &SkewPoly) -> Result<()> {
        if f.twist != self.gen.exponent() {
            return Err(Error::TwistMismatch(f.twist, self.gen.exponent()));
        }
        Ok(())
    }

    pub fn add(&self, f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly> {
        self.check(f)?;
        self.check(g)?;
        let k = self.tower.top();
        let len = f.coeffs.len().max(g.coeffs.len());
        Ok(self.poly((0..len).map(|i| k.add(f.coeff(i), g.coeff(i))).collect()))
    }

    pub fn sub(&self, f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly> {
        self.check(f)?;
        self.check(g)?;
        let k = self.tower.top();
        let len = f.coeffs.len().max(g.coeffs.len());
        Ok(self.poly((0..len).map(|i| k.sub(f.coeff(i), g.coeff(i))).collect()))
    }

    /// `f·g` under `t·c = σ(c)·t`.
    pub fn mul(&self, f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.poly(self.mul_coeffs(&f.coeffs, &g.coeffs)))
    }

    /// Product of raw coefficient slices: `Σ f_i σ^i(g_j) t^{i+j}`.
    pub(crate) fn mul_coeffs(&self, f: &[Elem], g: &[Elem]) -> Vec<Elem> {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let k = self.tower.top();
        let mut out = vec![Elem::ZERO; f.len() + g.len() - 1];
        for (i, &fi) in f.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, &gj) in g.iter().enumerate() {
                if gj.is_zero() {
                    continue;
                }
                let term = k.mul(fi, self.sigma_pow(i, gj));
                out[i + j] = k.add(out[i + j], term);
            }
        }
        out
    }

    /// Reduces `g` in place to its remainder on right division by the monic
    /// `f` (given by its coefficients, `f.last() == 1`), returning the
    /// quotient coefficients.
    pub(crate) fn reduce_monic(&self, g: &mut Vec<Elem>, f: &[Elem]) -> Vec<Elem> {
        let k = self.tower.top();
        let df = f.len() - 1;
        let mut quotient = vec![Elem::ZERO; g.len().saturating_sub(df)];
        for top in (df..g.len()).rev() {
            let c = g[top];
            if c.is_zero() {
                continue;
            }
            let shift = top - df;
            quotient[shift] = c;
            // c·t^shift·f = Σ c σ^shift(f_i) t^{shift+i}
            for (i, &fi) in f.iter().enumerate() {
                if fi.is_zero() {
                    continue;
                }
                let v = k.mul(c, self.sigma_pow(shift, fi));
                g[shift + i] = k.sub(g[shift + i], v);
            }
        }
        g.truncate(df.min(g.len()));
        quotient
    }

    /// Right division: `g = q·f + r`, `deg r < deg f`.
    pub fn right_divmod(&self, g: &SkewPoly, f: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.check(g)?;
        self.check(f)?;
        let lead = f.leading().ok_or(Error::DivisionByZeroPolynomial)?;
        let k = self.tower.top();
        let df = f.coeffs.len() - 1;
        let mut rem = g.coeffs.clone();
        let mut quotient = vec![Elem::ZERO; rem.len().saturating_sub(df)];
        while rem.len() > df {
            let top = rem.len() - 1;
            let shift = top - df;
            // The leading term of c·t^shift·f is c·σ^shift(lead)·t^top.
            let c = k.div(rem[top], self.sigma_pow(shift, lead));
            quotient[shift] = c;
            for (i, &fi) in f.coeffs.iter().enumerate() {
                let v = k.mul(c, self.sigma_pow(shift, fi));
                rem[shift + i] = k.sub(rem[shift + i], v);
            }
            debug_assert!(rem[top].is_zero());
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((self.poly(quotient), self.poly(rem)))
    }

    /// Remainder of right division by `f`.
    pub fn rem(&self, g: &SkewPoly, f: &SkewPoly) -> Result<SkewPoly> {
        Ok(self.right_divmod(g, f)?.1)
    }

    /// Whether `R·f` is a two-sided ideal: `f·b ∈ Rf` for every `b` in the
    /// F-basis of `K`, and `f·t ∈ Rf`.
    pub fn is_right_invariant(&self, f: &SkewPoly) -> Result<bool> {
        self.check(f)?;
        if f.degree() < 1 {
            return Err(Error::InvalidParameter(
                "right invariance needs deg f ≥ 1".into(),
            ));
        }
        let probes = self
            .tower
            .f_basis()
            .iter()
            .map(|&b| self.constant(b))
            .chain(std::iter::once(self.t()));
        for probe in probes {
            if !self.rem(&self.mul(f, &probe)?, f)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Number of monic polynomials of degree `k`.
    fn monic_count(&self, k: usize) -> u128 {
        (self.tower.top().order() as u128).saturating_pow(k as u32)
    }

    /// The monic polynomial of degree `k` at position `idx` of the canonical
    /// (lexicographic, constant coefficient first) order.
    fn monic_at(&self, k: usize, mut idx: u64) -> Vec<Elem> {
        let size = self.tower.top().order() as u64;
        let mut v = vec![Elem::ZERO; k + 1];
        for c in v[..k].iter_mut().rev() {
            *c = Elem((idx % size) as u32);
            idx /= size;
        }
        v[k] = self.tower.top().one();
        v
    }

    fn check_enumeration(&self, k: usize) -> Result<u64> {
        let needed = self.monic_count(k);
        if needed > self.tower.cap() as u128 {
            return Err(Error::EnumerationCapExceeded {
                needed,
                cap: self.tower.cap(),
            });
        }
        Ok(needed as u64)
    }

    /// All monic `g` of degree `k` that right-divide `f`, in canonical order.
    pub fn monic_right_divisors(&self, f: &SkewPoly, k: usize) -> Result<Vec<SkewPoly>> {
        self.check(f)?;
        let df = f.degree().finite().ok_or(Error::DivisionByZeroPolynomial)?;
        if k == 0 || k >= df {
            return Err(Error::InvalidParameter(format!(
                "divisor degree {k} must lie in 1..{df}"
            )));
        }
        let count = self.check_enumeration(k)?;
        let fc = f.coeffs.clone();
        let divisors = par::filter_map_collect(count, |idx| {
            let g = self.monic_at(k, idx);
            let mut r = fc.clone();
            self.reduce_monic(&mut r, &g);
            r.iter().all(|c| c.is_zero()).then(|| self.poly(g))
        });
        Ok(divisors)
    }

    /// `f` has no factorization into two non-units, decided by searching
    /// monic right divisors of every proper degree.
    pub fn is_irreducible(&self, f: &SkewPoly) -> Result<bool> {
        self.check(f)?;
        let df = f.degree().finite().ok_or(Error::DivisionByZeroPolynomial)?;
        if df == 0 {
            return Ok(false);
        }
        for k in 1..df {
            self.check_enumeration(k)?;
        }
        let fc = f.coeffs.clone();
        for k in 1..df {
            let count = self.monic_count(k) as u64;
            let hit = par::find_first(count, |idx| {
                let g = self.monic_at(k, idx);
                let mut r = fc.clone();
                self.reduce_monic(&mut r, &g);
                r.iter().all(|c| c.is_zero())
            });
            if hit.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
