//! Rank-metric codes from right multiplication in Petit division algebras,
//! and skew σ-constacyclic codes from right divisors of `t^m - a`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::fields::{Elem, ExtensionTower, FiniteField, GaloisGenerator};
use crate::linalg::{span_rank, Matrix};
use crate::petit::{PetitAlgebra, Side};
use crate::skewpoly::SkewPoly;
use crate::{par, Error, Result};

/// Which field of the tower the matrix entries live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Top,
    Base,
}

/// An `F_q`-linear code of `N×N` matrices, stored by an `F_q`-basis.
/// Codeword `idx` is `Σ c_i B_i` with `(c_0, …)` the base-`q` digits of
/// `idx`, most significant first.
#[derive(Clone, Debug)]
pub struct RankCode {
    tower: Arc<ExtensionTower>,
    ambient: Ambient,
    size: usize,
    basis: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MrdReport {
    pub size: usize,
    /// `|F_Q|` of the entries.
    pub field_order: u64,
    pub cardinality: u128,
    pub min_rank_distance: usize,
    /// `N(N - d + 1)`, the exponent of `Q` in the Singleton bound.
    pub bound_exponent: u64,
    pub mrd: bool,
}

impl RankCode {
    pub fn from_basis(
        tower: Arc<ExtensionTower>,
        ambient: Ambient,
        basis: Vec<Matrix>,
    ) -> Result<Self> {
        let size = basis.first().map_or(0, Matrix::rows);
        if size == 0 || basis.iter().any(|b| b.rows() != size || b.cols() != size) {
            return Err(Error::InvalidParameter(
                "basis matrices must be square".into(),
            ));
        }
        Ok(RankCode {
            tower,
            ambient,
            size,
            basis,
        })
    }

    /// `{R(x) : x ∈ A}` in `M_m(K)`, without a division check.
    pub fn right_multiplication(alg: &PetitAlgebra) -> Self {
        let basis = alg
            .f_basis()
            .iter()
            .map(|x| alg.right_mult_matrix_k_raw(x.coeffs()))
            .collect();
        RankCode {
            tower: alg.tower().clone(),
            ambient: Ambient::Top,
            size: alg.degree(),
            basis,
        }
    }

    /// `{R_x : x ∈ A}` in `M_{mn}(F)`, without a division check.
    pub fn right_multiplication_expanded(alg: &PetitAlgebra) -> Self {
        let basis = alg
            .f_basis()
            .iter()
            .map(|x| alg.mult_matrix_f_raw(x.coeffs(), Side::Right))
            .collect();
        RankCode {
            tower: alg.tower().clone(),
            ambient: Ambient::Base,
            size: alg.dimension(),
            basis,
        }
    }

    pub fn tower(&self) -> &Arc<ExtensionTower> {
        &self.tower
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn field(&self) -> &FiniteField {
        match self.ambient {
            Ambient::Top => self.tower.top(),
            Ambient::Base => self.tower.base(),
        }
    }

    /// Matrix size `N`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn cardinality(&self) -> u128 {
        (self.tower.q() as u128).saturating_pow(self.basis.len() as u32)
    }

    pub fn codeword(&self, mut idx: u64) -> Matrix {
        let q = self.tower.q() as u64;
        let field = self.field();
        let mut out = Matrix::zeros(self.size, self.size);
        for b in self.basis.iter().rev() {
            let digit = (idx % q) as u32;
            idx /= q;
            if digit != 0 {
                let c = Elem(digit);
                let c = match self.ambient {
                    Ambient::Top => self.tower.embed(c),
                    Ambient::Base => c,
                };
                out = out.add(field, &b.scale(field, c));
            }
        }
        out
    }

    fn check_enumerable(&self) -> Result<u64> {
        let card = self.cardinality();
        if card > self.tower.cap() as u128 {
            return Err(Error::SizeCapExceeded {
                needed: card,
                cap: self.tower.cap(),
            });
        }
        Ok(card as u64)
    }

    pub fn codewords(&self) -> Result<Vec<Matrix>> {
        let card = self.check_enumerable()?;
        Ok(par::map_collect(card, |i| self.codeword(i)))
    }

    /// Least rank of a nonzero codeword.
    pub fn min_rank_distance(&self) -> Result<usize> {
        let card = self.check_enumerable()?;
        let field = self.field();
        par::min_of(card.saturating_sub(1), |i| {
            let r = self.codeword(i + 1).rank(field);
            (r > 0).then_some(r)
        })
        .ok_or_else(|| Error::InvalidParameter("the code has no nonzero codeword".into()))
    }

    /// Singleton equality `|C| = Q^{N(N-d+1)}`, compared as powers of `p`.
    pub fn mrd_check(&self) -> Result<MrdReport> {
        let d = self.min_rank_distance()?;
        let n = self.size as u64;
        let bound_exponent = n * (n - d as u64 + 1);
        let q_exp = self.tower.base().degree() as u64;
        let field_exp = self.field().degree() as u64;
        let independent = span_rank(
            self.tower.base(),
            &self
                .basis
                .iter()
                .map(|b| self.base_coords(b))
                .collect::<Vec<_>>(),
        ) == self.basis.len();
        Ok(MrdReport {
            size: self.size,
            field_order: self.field().order() as u64,
            cardinality: self.cardinality(),
            min_rank_distance: d,
            bound_exponent,
            mrd: independent && self.basis.len() as u64 * q_exp == bound_exponent * field_exp,
        })
    }

    fn base_coords(&self, m: &Matrix) -> Vec<Elem> {
        match self.ambient {
            Ambient::Base => m.entries().to_vec(),
            Ambient::Top => m
                .entries()
                .iter()
                .flat_map(|&x| self.tower.f_coords(x).iter().copied())
                .collect(),
        }
    }
}

fn require_division(alg: &PetitAlgebra) -> Result<()> {
    if alg.cyclic_constant().is_none() {
        return Err(Error::HypothesisViolation(
            "the modulus must be t^m - a".into(),
        ));
    }
    if !alg.is_division()? {
        return Err(Error::NotDivision);
    }
    Ok(())
}

/// `C_{σ,a} = {R(x) : x ∈ A} ⊂ M_m(K)` for a division algebra `A`.
pub fn build_rank_code(alg: &PetitAlgebra) -> Result<RankCode> {
    require_division(alg)?;
    Ok(RankCode::right_multiplication(alg))
}

/// The same code expanded over `F`: `{R_x : x ∈ A} ⊂ M_{mn}(F)`.
pub fn expand_rank_code(alg: &PetitAlgebra) -> Result<RankCode> {
    require_division(alg)?;
    Ok(RankCode::right_multiplication_expanded(alg))
}

/// A skew σ-constacyclic `[m, m-k]` code over `K`, the left ideal of
/// `S_{t^m - a}` generated by a monic right divisor `g` of degree `k`.
#[derive(Clone, Debug)]
pub struct ConstaCode {
    tower: Arc<ExtensionTower>,
    gen: GaloisGenerator,
    pub m: usize,
    pub k: usize,
    pub a: Elem,
    pub g: SkewPoly,
    pub generator_matrix: Matrix,
    pub min_hamming_distance: usize,
    pub singleton_equality: bool,
}

impl ConstaCode {
    pub fn tower(&self) -> &Arc<ExtensionTower> {
        &self.tower
    }

    pub fn generator(&self) -> GaloisGenerator {
        self.gen
    }

    pub fn dimension(&self) -> usize {
        self.m - self.k
    }

    pub fn codeword_count(&self) -> u128 {
        (self.tower.top().order() as u128).saturating_pow(self.dimension() as u32)
    }

    /// `Σ λ_i row_i` with `λ` the base-`|K|` digits of `idx`.
    pub fn codeword(&self, mut idx: u64) -> Vec<Elem> {
        let k = self.tower.top();
        let size = k.order() as u64;
        let mut out = vec![Elem::ZERO; self.m];
        for r in (0..self.dimension()).rev() {
            let lambda = Elem((idx % size) as u32);
            idx /= size;
            if !lambda.is_zero() {
                for (o, &x) in out.iter_mut().zip(self.generator_matrix.row(r)) {
                    *o = k.add(*o, k.mul(lambda, x));
                }
            }
        }
        out
    }

    /// `(c_0, …, c_{m-1}) ↦ (aσ(c_{m-1}), σ(c_0), …, σ(c_{m-2}))`.
    pub fn shift(&self, c: &[Elem]) -> Vec<Elem> {
        let k = self.tower.top();
        let mut out = Vec::with_capacity(self.m);
        out.push(k.mul(self.a, self.gen.apply(&self.tower, c[self.m - 1])));
        out.extend(
            c[..self.m - 1]
                .iter()
                .map(|&x| self.gen.apply(&self.tower, x)),
        );
        out
    }

    pub fn codewords(&self) -> Result<Vec<Vec<Elem>>> {
        let count = self.codeword_count();
        if count > self.tower.cap() as u128 {
            return Err(Error::EnumerationCapExceeded {
                needed: count,
                cap: self.tower.cap(),
            });
        }
        Ok(par::map_collect(count as u64, |i| self.codeword(i)))
    }

    /// Every codeword shifts into the code.
    pub fn is_shift_closed(&self) -> Result<bool> {
        let words = self.codewords()?;
        let set: BTreeSet<&Vec<Elem>> = words.iter().collect();
        Ok(words.iter().all(|c| set.contains(&self.shift(c))))
    }

    /// The shift of each generator row lies in the row space.
    pub fn rows_shift_into_span(&self) -> bool {
        let k = self.tower.top();
        let rows: Vec<Vec<Elem>> = (0..self.dimension())
            .map(|r| self.generator_matrix.row(r).to_vec())
            .collect();
        rows.iter().all(|row| {
            let mut ext = rows.clone();
            ext.push(self.shift(row));
            span_rank(k, &ext) == rows.len()
        })
    }
}

fn hamming_weight(c: &[Elem]) -> usize {
    c.iter().filter(|x| !x.is_zero()).count()
}

/// The code generated by `g`, a monic right divisor of `t^m - a` with
/// `1 ≤ deg g < m`; rows are the coefficients of `t^i ∘ g`, `i < m - k`.
pub fn constacyclic_from_divisor(
    tower: Arc<ExtensionTower>,
    gen: GaloisGenerator,
    m: usize,
    a: Elem,
    g: &SkewPoly,
) -> Result<ConstaCode> {
    if a.is_zero() {
        return Err(Error::InvalidParameter(
            "the constant a must be nonzero".into(),
        ));
    }
    let alg = PetitAlgebra::cyclic(tower.clone(), gen, m, a)?;
    let k = match g.degree().finite() {
        Some(k) if (1..m).contains(&k) => k,
        _ => return Err(Error::NotADivisor),
    };
    if g.leading() != Some(tower.top().one()) {
        return Err(Error::InvalidParameter(
            "the generator polynomial must be monic".into(),
        ));
    }
    let (_, r) = alg.ring().right_divmod(alg.modulus(), g)?;
    if !r.is_zero() {
        return Err(Error::NotADivisor);
    }
    let gx = alg.from_poly(g)?;
    let rows: Vec<Vec<Elem>> = (0..m - k)
        .map(|i| Ok(alg.mul(&alg.t_pow(i), &gx)?.coeffs().to_vec()))
        .collect::<Result<_>>()?;
    let mut code = ConstaCode {
        tower,
        gen,
        m,
        k,
        a,
        g: g.clone(),
        generator_matrix: Matrix::from_rows(rows),
        min_hamming_distance: 0,
        singleton_equality: false,
    };
    let count = code.codeword_count();
    if count > code.tower.cap() as u128 {
        return Err(Error::EnumerationCapExceeded {
            needed: count,
            cap: code.tower.cap(),
        });
    }
    let d = par::min_of(count as u64 - 1, |i| {
        let w = hamming_weight(&code.codeword(i + 1));
        (w > 0).then_some(w)
    })
    .ok_or_else(|| Error::Inconsistent("the code has no nonzero codeword".into()))?;
    if d > k + 1 {
        return Err(Error::Inconsistent(format!(
            "min distance {d} exceeds k + 1 = {}",
            k + 1
        )));
    }
    code.min_hamming_distance = d;
    code.singleton_equality = d == k + 1;
    Ok(code)
}

/// One code per monic right divisor of `t^m - a` of each degree `1..m`.
pub fn list_constacyclic(
    tower: Arc<ExtensionTower>,
    gen: GaloisGenerator,
    m: usize,
    a: Elem,
) -> Result<Vec<ConstaCode>> {
    let alg = PetitAlgebra::cyclic(tower.clone(), gen, m, a)?;
    let mut out = Vec::new();
    for k in 1..m {
        for g in alg.ring().monic_right_divisors(alg.modulus(), k)? {
            out.push(constacyclic_from_divisor(tower.clone(), gen, m, a, &g)?);
        }
    }
    Ok(out)
}

/// `α ∈ F^×` with `a_1 = α^m a_2`, least first.
pub fn alpha_closed_form(tower: &ExtensionTower, m: usize, a1: Elem, a2: Elem) -> Option<Elem> {
    let k = tower.top();
    tower
        .base_image()
        .into_iter()
        .filter(|x| !x.is_zero())
        .find(|&alpha| a1 == k.mul(k.pow(alpha, m as u64), a2))
}

/// Whether `h(t) ↦ h(αt)` is multiplicative `S_{t^m - a_1} → S_{t^m - a_2}`
/// on all pairs of basis elements.
pub fn alpha_map_is_isomorphism(a1: &PetitAlgebra, a2: &PetitAlgebra, alpha: Elem) -> bool {
    let k = a1.tower().top();
    let phi = |x: &[Elem]| -> Vec<Elem> {
        x.iter()
            .enumerate()
            .map(|(i, &c)| k.mul(c, k.pow(alpha, i as u64)))
            .collect()
    };
    let basis: Vec<Vec<Elem>> = a1.f_basis().iter().map(|x| x.coeffs().to_vec()).collect();
    basis.iter().all(|x| {
        basis
            .iter()
            .all(|y| phi(&a1.mul_coeffs(x, y)) == a2.mul_coeffs(&phi(x), &phi(y)))
    })
}

/// Least `α ∈ F^×` for which `h(t) ↦ h(αt)` is directly verified to be an
/// isomorphism, by search over all of `F^×`.
pub fn alpha_direct(a1: &PetitAlgebra, a2: &PetitAlgebra) -> Option<Elem> {
    a1.tower()
        .base_image()
        .into_iter()
        .filter(|x| !x.is_zero())
        .find(|&alpha| alpha_map_is_isomorphism(a1, a2, alpha))
}

/// `α` from the closed form, re-verified on the algebras.
pub fn alpha_equivalence(
    tower: Arc<ExtensionTower>,
    gen: GaloisGenerator,
    m: usize,
    a1: Elem,
    a2: Elem,
) -> Result<Option<Elem>> {
    let Some(alpha) = alpha_closed_form(&tower, m, a1, a2) else {
        return Ok(None);
    };
    let s1 = PetitAlgebra::cyclic(tower.clone(), gen, m, a1)?;
    let s2 = PetitAlgebra::cyclic(tower, gen, m, a2)?;
    if !alpha_map_is_isomorphism(&s1, &s2, alpha) {
        return Err(Error::Inconsistent(
            "closed-form α failed direct verification".into(),
        ));
    }
    Ok(Some(alpha))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeVerdict {
    pub equivalent: bool,
    pub isometric: bool,
    /// Whether the full code classes are inequivalent; not settled.
    pub code_classes: &'static str,
}

/// `a_1`, `a_2` are neither `(m,σ)`-equivalent nor `(m,σ)`-isometric for
/// distinct generators, `n ≥ 3`, `n ≥ m - 1`, `a_i ∈ K ∖ F`.
pub fn cross_generator_code_verdict(
    tower: &ExtensionTower,
    gen1: GaloisGenerator,
    gen2: GaloisGenerator,
    m: usize,
    a1: Elem,
    a2: Elem,
) -> Result<CodeVerdict> {
    let n = tower.degree() as usize;
    if gen1 == gen2 {
        return Err(Error::HypothesisViolation(
            "equal generators: use alpha_equivalence".into(),
        ));
    }
    if n < 3 || n + 1 < m {
        return Err(Error::HypothesisViolation(
            "needs n ≥ 3 and n ≥ m - 1".into(),
        ));
    }
    for a in [a1, a2] {
        if a.is_zero() || tower.in_base(a) {
            return Err(Error::HypothesisViolation("needs a_1, a_2 ∈ K \\ F".into()));
        }
    }
    Ok(CodeVerdict {
        equivalent: false,
        isometric: false,
        code_classes: "unresolved",
    })
}
