//! Petit algebras `S_f = K[t;σ]/K[t;σ]f`: skew polynomials of degree `< m`
//! multiplied as `g ∘ h = g·h mod_r f`.
//!
//! An algebra is a finite-dimensional `F`-algebra of dimension `m·n`. Its
//! canonical `F`-basis is `w^l t^i` (`0 ≤ i < m`, `0 ≤ l < n`, with `w^l` the
//! tower's `F`-basis of `K`), indexed `i·n + l`.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::fields::{primitive_root_of_unity, Elem, ExtensionTower, GaloisGenerator};
use crate::linalg::{same_span, Matrix};
use crate::skewpoly::{SkewPoly, SkewRing};
use crate::{par, Error, Result};

/// An element `x_0 + x_1 t + ⋯ + x_{m-1} t^{m-1}` of a specific algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraElement {
    owner: u64,
    coeffs: Vec<Elem>,
}

impl AlgebraElement {
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Computed nuclei and center, each as an `F`-basis, together with the
/// right nucleus predicted from the stabilizer of `a` when `f = t^m - a`
/// with `a ∈ K ∖ F`.
#[derive(Clone, Debug)]
pub struct NucleusReport {
    pub left: Vec<AlgebraElement>,
    pub middle: Vec<AlgebraElement>,
    pub right: Vec<AlgebraElement>,
    pub center: Vec<AlgebraElement>,
    /// Least `s ≥ 1` with `σ^s(a) = a`; also `[E:F]` for `E = Fix(σ^s)`.
    pub stabilizer_index: Option<u32>,
    /// `K ⊕ K t^s ⊕ ⋯ ⊕ K t^{(r-1)s}` (terms of degree `< m`), `n = s·r`.
    pub predicted_right: Option<Vec<AlgebraElement>>,
    pub right_matches_prediction: Option<bool>,
}

impl NucleusReport {
    pub fn dims(&self) -> [usize; 4] {
        [
            self.left.len(),
            self.middle.len(),
            self.right.len(),
            self.center.len(),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrecheckCriterion {
    /// Division iff `σ^{m-1}(z)⋯σ(z)z ≠ a` for all `z ∈ K`.
    TwistedNormEquation,
    /// `N(a) ∉ N(K^×)^m` implies division.
    NormOutsideNormPowers,
    /// `N(a) ∉ (F^×)^m` implies division.
    NormOutsideFieldPowers,
    /// `n = m` and `m` prime as above: every `a ∈ K ∖ F` gives a division algebra.
    CyclicPrimeDegree,
    /// `n = m` and `a` in no proper subfield implies division.
    NotInProperSubfield,
    /// `n = m` and `a` in a proper subfield `E ≠ F`: the right nucleus is an
    /// associative cyclic algebra of degree `r > 1` over `E`, hence split.
    SplitRightNucleus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrecheckVerdict {
    Division,
    NotDivision,
    Inconclusive,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Precheck {
    pub criterion: PrecheckCriterion,
    pub verdict: PrecheckVerdict,
}

/// `S_f` for a monic `f` of degree `m ≥ 2`.
#[derive(Clone, Debug)]
pub struct PetitAlgebra {
    ring: SkewRing,
    modulus: SkewPoly,
    m: usize,
    right_invariant: bool,
    id: u64,
}

impl PetitAlgebra {
    pub fn new(ring: SkewRing, f: SkewPoly) -> Result<Self> {
        let m = match f.degree().finite() {
            Some(d) if d >= 2 => d,
            _ => {
                return Err(Error::InvalidParameter(
                    "the modulus must have degree m > 1".into(),
                ))
            }
        };
        if f.leading() != Some(ring.tower().top().one()) {
            return Err(Error::InvalidParameter("the modulus must be monic".into()));
        }
        let right_invariant = ring.is_right_invariant(&f)?;
        let tower = ring.tower();
        let mut h = DefaultHasher::new();
        (tower.q(), tower.degree(), tower.top().modulus(), &f).hash(&mut h);
        Ok(PetitAlgebra {
            id: h.finish(),
            ring,
            modulus: f,
            m,
            right_invariant,
        })
    }

    /// `K[t;σ]/K[t;σ](t^m - a)`.
    pub fn cyclic(
        tower: Arc<ExtensionTower>,
        gen: GaloisGenerator,
        m: usize,
        a: Elem,
    ) -> Result<Self> {
        let ring = SkewRing::new(tower, gen);
        let f = ring.binomial(m, a);
        PetitAlgebra::new(ring, f)
    }

    pub fn ring(&self) -> &SkewRing {
        &self.ring
    }

    pub fn tower(&self) -> &Arc<ExtensionTower> {
        self.ring.tower()
    }

    pub fn generator(&self) -> GaloisGenerator {
        self.ring.generator()
    }

    pub fn modulus(&self) -> &SkewPoly {
        &self.modulus
    }

    /// `m = deg f`.
    pub fn degree(&self) -> usize {
        self.m
    }

    /// `[S_f : F] = m·n`.
    pub fn dimension(&self) -> usize {
        self.m * self.tower().degree() as usize
    }

    /// Number of elements, `|K|^m`.
    pub fn order(&self) -> u128 {
        (self.tower().top().order() as u128).saturating_pow(self.m as u32)
    }

    /// `a` when `f = t^m - a`.
    pub fn cyclic_constant(&self) -> Option<Elem> {
        let c = self.modulus.coeffs();
        c[1..self.m]
            .iter()
            .all(|x| x.is_zero())
            .then(|| self.tower().top().neg(c[0]))
    }

    pub fn is_right_invariant(&self) -> bool {
        self.right_invariant
    }

    /// Not associative.
    pub fn is_proper(&self) -> bool {
        !self.right_invariant
    }

    fn own(&self, x: &AlgebraElement) -> Result<()> {
        if x.owner != self.id {
            return Err(Error::OwnerMismatch);
        }
        Ok(())
    }

    pub(crate) fn wrap(&self, coeffs: Vec<Elem>) -> AlgebraElement {
        debug_assert_eq!(coeffs.len(), self.m);
        AlgebraElement {
            owner: self.id,
            coeffs,
        }
    }

    pub fn element(&self, coeffs: Vec<Elem>) -> Result<AlgebraElement> {
        let k = self.tower().top();
        if coeffs.len() != self.m || !coeffs.iter().all(|&c| k.contains(c)) {
            return Err(Error::InvalidParameter(format!(
                "an element needs {} coefficients in K",
                self.m
            )));
        }
        Ok(self.wrap(coeffs))
    }

    /// Reduces a skew polynomial modulo `f` into the algebra.
    pub fn from_poly(&self, g: &SkewPoly) -> Result<AlgebraElement> {
        let r = self.ring.rem(g, &self.modulus)?;
        let mut coeffs = r.coeffs().to_vec();
        coeffs.resize(self.m, Elem::ZERO);
        Ok(self.wrap(coeffs))
    }

    pub fn to_poly(&self, x: &AlgebraElement) -> SkewPoly {
        self.ring.poly(x.coeffs.clone())
    }

    pub fn zero(&self) -> AlgebraElement {
        self.wrap(vec![Elem::ZERO; self.m])
    }

    pub fn one(&self) -> AlgebraElement {
        self.scalar(self.tower().top().one())
    }

    pub fn scalar(&self, c: Elem) -> AlgebraElement {
        let mut v = vec![Elem::ZERO; self.m];
        v[0] = c;
        self.wrap(v)
    }

    /// `c·t^i`, `i < m`.
    pub fn monomial(&self, c: Elem, i: usize) -> AlgebraElement {
        assert!(i < self.m);
        let mut v = vec![Elem::ZERO; self.m];
        v[i] = c;
        self.wrap(v)
    }

    pub fn t_pow(&self, i: usize) -> AlgebraElement {
        self.monomial(self.tower().top().one(), i)
    }

    /// The element at position `idx` of the canonical order (coefficient
    /// vectors compared lexicographically, `x_0` first).
    pub fn element_at(&self, idx: u64) -> AlgebraElement {
        self.wrap(self.coeffs_at(idx))
    }

    pub(crate) fn coeffs_at(&self, mut idx: u64) -> Vec<Elem> {
        let size = self.tower().top().order() as u64;
        let mut v = vec![Elem::ZERO; self.m];
        for c in v.iter_mut().rev() {
            *c = Elem((idx % size) as u32);
            idx /= size;
        }
        v
    }

    pub fn index_of(&self, x: &AlgebraElement) -> u64 {
        let size = self.tower().top().order() as u64;
        x.coeffs.iter().fold(0, |acc, c| acc * size + c.0 as u64)
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.own(x)?;
        self.own(y)?;
        Ok(self.wrap(self.add_coeffs(&x.coeffs, &y.coeffs)))
    }

    pub fn sub(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.own(x)?;
        self.own(y)?;
        let k = self.tower().top();
        Ok(self.wrap(
            x.coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(&a, &b)| k.sub(a, b))
                .collect(),
        ))
    }

    pub(crate) fn add_coeffs(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let k = self.tower().top();
        x.iter().zip(y).map(|(&a, &b)| k.add(a, b)).collect()
    }

    /// Left multiplication by a scalar of `K` (coefficientwise).
    pub(crate) fn scale_coeffs(&self, c: Elem, x: &[Elem]) -> Vec<Elem> {
        let k = self.tower().top();
        x.iter().map(|&v| k.mul(c, v)).collect()
    }

    pub(crate) fn mul_coeffs(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let mut prod = self.ring.mul_coeffs(x, y);
        if prod.len() > self.m {
            self.ring.reduce_monic(&mut prod, self.modulus.coeffs());
        }
        prod.resize(self.m, Elem::ZERO);
        prod
    }

    /// `x ∘ y = x·y mod_r f`.
    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.own(x)?;
        self.own(y)?;
        Ok(self.wrap(self.mul_coeffs(&x.coeffs, &y.coeffs)))
    }

    /// `[x, y, z] = (x∘y)∘z - x∘(y∘z)`.
    pub fn associator(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
        z: &AlgebraElement,
    ) -> Result<AlgebraElement> {
        self.own(x)?;
        self.own(y)?;
        self.own(z)?;
        Ok(self.wrap(self.associator_coeffs(&x.coeffs, &y.coeffs, &z.coeffs)))
    }

    fn associator_coeffs(&self, x: &[Elem], y: &[Elem], z: &[Elem]) -> Vec<Elem> {
        let k = self.tower().top();
        let l = self.mul_coeffs(&self.mul_coeffs(x, y), z);
        let r = self.mul_coeffs(x, &self.mul_coeffs(y, z));
        l.iter().zip(&r).map(|(&a, &b)| k.sub(a, b)).collect()
    }

    /// The canonical `F`-basis `w^l t^i`, indexed `i·n + l`.
    pub fn f_basis(&self) -> Vec<AlgebraElement> {
        let tower = self.tower();
        (0..self.m)
            .flat_map(|i| tower.f_basis().iter().map(move |&b| (i, b)))
            .map(|(i, b)| self.monomial(b, i))
            .collect()
    }

    /// Coordinates over `F` in [`Self::f_basis`], as elements of `F`.
    pub fn f_coords(&self, x: &AlgebraElement) -> Vec<Elem> {
        self.f_coords_raw(&x.coeffs)
    }

    pub(crate) fn f_coords_raw(&self, x: &[Elem]) -> Vec<Elem> {
        let tower = self.tower();
        x.iter()
            .flat_map(|&c| tower.f_coords(c).iter().copied())
            .collect()
    }

    pub fn from_f_coords(&self, coords: &[Elem]) -> AlgebraElement {
        let tower = self.tower();
        let k = tower.top();
        let n = tower.degree() as usize;
        assert_eq!(coords.len(), self.m * n);
        let coeffs = coords
            .chunks(n)
            .map(|chunk| {
                chunk
                    .iter()
                    .zip(tower.f_basis())
                    .fold(Elem::ZERO, |acc, (&c, &b)| {
                        k.add(acc, k.mul(tower.embed(c), b))
                    })
            })
            .collect();
        self.wrap(coeffs)
    }

    /// Whether two families of elements span the same `F`-subspace.
    pub fn same_subspace(&self, a: &[AlgebraElement], b: &[AlgebraElement]) -> bool {
        let va: Vec<Vec<Elem>> = a.iter().map(|x| self.f_coords(x)).collect();
        let vb: Vec<Vec<Elem>> = b.iter().map(|x| self.f_coords(x)).collect();
        same_span(self.tower().base(), &va, &vb)
    }

    /// `F`-basis of the constants `K ⊂ S_f`.
    pub fn k_subspace(&self) -> Vec<AlgebraElement> {
        self.tower()
            .f_basis()
            .iter()
            .map(|&b| self.scalar(b))
            .collect()
    }

    /// `F`-basis of `F·1 ⊂ S_f`.
    pub fn f_subspace(&self) -> Vec<AlgebraElement> {
        vec![self.one()]
    }

    /// Associativity checked on all triples of basis elements.
    pub fn is_associative(&self) -> bool {
        let basis: Vec<Vec<Elem>> = self.f_basis().into_iter().map(|x| x.coeffs).collect();
        let d = basis.len() as u64;
        par::all(d * d * d, |idx| {
            let (a, b, c) = (
                (idx / (d * d)) as usize,
                ((idx / d) % d) as usize,
                (idx % d) as usize,
            );
            self.associator_coeffs(&basis[a], &basis[b], &basis[c])
                .iter()
                .all(|x| x.is_zero())
        })
    }

    /// Left, middle, right nucleus and center, each solved as the kernel of
    /// the associator conditions against the basis.
    pub fn nuclei(&self) -> NucleusReport {
        let basis: Vec<Vec<Elem>> = self.f_basis().into_iter().map(|x| x.coeffs).collect();
        let d = basis.len();
        let base = self.tower().base();

        // assoc[a][b][c] = F-coordinates of [B_a, B_b, B_c]
        let assoc: Vec<Vec<Vec<Vec<Elem>>>> = par::map_collect(d as u64, |a| {
            let a = a as usize;
            (0..d)
                .map(|b| {
                    let ab = self.mul_coeffs(&basis[a], &basis[b]);
                    (0..d)
                        .map(|c| {
                            let lhs = self.mul_coeffs(&ab, &basis[c]);
                            let bc = self.mul_coeffs(&basis[b], &basis[c]);
                            let rhs = self.mul_coeffs(&basis[a], &bc);
                            let diff: Vec<Elem> = lhs
                                .iter()
                                .zip(&rhs)
                                .map(|(&x, &y)| self.tower().top().sub(x, y))
                                .collect();
                            self.f_coords_raw(&diff)
                        })
                        .collect()
                })
                .collect()
        });
        let commutators: Vec<Vec<Vec<Elem>>> = (0..d)
            .map(|a| {
                (0..d)
                    .map(|b| {
                        let ab = self.mul_coeffs(&basis[a], &basis[b]);
                        let ba = self.mul_coeffs(&basis[b], &basis[a]);
                        let diff: Vec<Elem> = ab
                            .iter()
                            .zip(&ba)
                            .map(|(&x, &y)| self.tower().top().sub(x, y))
                            .collect();
                        self.f_coords_raw(&diff)
                    })
                    .collect()
            })
            .collect();

        // Conditions: one row per (pair of fixed basis indices, coordinate),
        // one column per basis element in the free slot.
        let condition_rows = |slot: usize| -> Vec<Vec<Elem>> {
            let mut rows = Vec::with_capacity(d * d * d);
            for u in 0..d {
                for v in 0..d {
                    for coord in 0..d {
                        rows.push(
                            (0..d)
                                .map(|x| {
                                    let (a, b, c) = match slot {
                                        0 => (x, u, v),
                                        1 => (u, x, v),
                                        _ => (u, v, x),
                                    };
                                    assoc[a][b][c][coord]
                                })
                                .collect(),
                        );
                    }
                }
            }
            rows
        };
        let solve = |rows: Vec<Vec<Elem>>| -> Vec<AlgebraElement> {
            Matrix::from_rows(rows)
                .nullspace(base)
                .into_iter()
                .map(|v| self.from_f_coords(&v))
                .collect()
        };
        let (left_rows, middle_rows, right_rows) =
            (condition_rows(0), condition_rows(1), condition_rows(2));
        let mut center_rows = Vec::new();
        center_rows.extend(left_rows.iter().cloned());
        center_rows.extend(middle_rows.iter().cloned());
        center_rows.extend(right_rows.iter().cloned());
        for u in 0..d {
            for coord in 0..d {
                center_rows.push((0..d).map(|x| commutators[x][u][coord]).collect());
            }
        }

        let left = solve(left_rows);
        let middle = solve(middle_rows);
        let right = solve(right_rows);
        let center = solve(center_rows);

        let tower = self.tower();
        let gen = self.generator();
        let a = self.cyclic_constant();
        let stabilizer_index = a.map(|a| tower.stabilizer_index(&gen, a));
        let predicted_right = match (a, stabilizer_index) {
            (Some(a), Some(s)) if !tower.in_base(a) => {
                let r = tower.degree() / s;
                Some(
                    (0..r as usize)
                        .map(|i| i * s as usize)
                        .take_while(|&deg| deg < self.m)
                        .flat_map(|deg| tower.f_basis().iter().map(move |&b| self.monomial(b, deg)))
                        .collect::<Vec<_>>(),
                )
            }
            _ => None,
        };
        let right_matches_prediction = predicted_right
            .as_ref()
            .map(|p| self.same_subspace(p, &right));

        NucleusReport {
            left,
            middle,
            right,
            center,
            stabilizer_index,
            predicted_right,
            right_matches_prediction,
        }
    }

    /// Matrix over `K` whose column `i` holds the coefficients of `t^i ∘ x`,
    /// so that `R(x)·coeffs(y) = coeffs(y ∘ x)`. For `f = t^m - a` this is
    /// `[[x_0, aσ(x_{m-1}), …], [x_1, σ(x_0), …], …]`.
    pub fn right_mult_matrix_k(&self, x: &AlgebraElement) -> Result<Matrix> {
        self.own(x)?;
        Ok(self.right_mult_matrix_k_raw(&x.coeffs))
    }

    pub(crate) fn right_mult_matrix_k_raw(&self, x: &[Elem]) -> Matrix {
        let k1 = self.tower().top().one();
        let cols = (0..self.m)
            .map(|i| {
                let mut ti = vec![Elem::ZERO; i + 1];
                ti[i] = k1;
                self.mul_coeffs(&ti, x)
            })
            .collect();
        Matrix::from_columns(cols)
    }

    /// Matrix over `F` of `L_x: y ↦ x∘y` or `R_x: y ↦ y∘x` in the canonical
    /// basis.
    pub fn mult_matrix_f(&self, x: &AlgebraElement, side: Side) -> Result<Matrix> {
        self.own(x)?;
        Ok(self.mult_matrix_f_raw(&x.coeffs, side))
    }

    pub(crate) fn mult_matrix_f_raw(&self, x: &[Elem], side: Side) -> Matrix {
        let cols = self
            .f_basis()
            .iter()
            .map(|b| {
                let prod = match side {
                    Side::Left => self.mul_coeffs(x, &b.coeffs),
                    Side::Right => self.mul_coeffs(&b.coeffs, x),
                };
                self.f_coords_raw(&prod)
            })
            .collect();
        Matrix::from_columns(cols)
    }

    fn all_invertible(&self, side: Side) -> Result<bool> {
        self.tower().check_cap(self.order())?;
        let dim = self.dimension();
        let base = self.tower().base();
        let count = self.order() as u64;
        Ok(par::all(count - 1, |i| {
            let x = self.coeffs_at(i + 1);
            self.mult_matrix_f_raw(&x, side).rank(base) == dim
        }))
    }

    /// Every `L_x`, `x ≠ 0`, is invertible.
    pub fn all_left_invertible(&self) -> Result<bool> {
        self.all_invertible(Side::Left)
    }

    /// Every `R_x`, `x ≠ 0`, is invertible.
    pub fn all_right_invertible(&self) -> Result<bool> {
        self.all_invertible(Side::Right)
    }

    /// Every `L_x` and every `R_x`, `x ≠ 0`, is invertible.
    pub fn is_division(&self) -> Result<bool> {
        Ok(self.all_left_invertible()? && self.all_right_invertible()?)
    }

    /// For a monic right divisor `g` of `f` with `0 < deg g < m`, returns the
    /// zero divisors `(q, g)` with `f = q·g`, so `q ∘ g = 0`.
    pub fn zero_divisors_from_divisor(
        &self,
        g: &SkewPoly,
    ) -> Result<(AlgebraElement, AlgebraElement)> {
        let (q, r) = self.ring.right_divmod(&self.modulus, g)?;
        let deg = g.degree().finite().unwrap_or(0);
        if !r.is_zero() || deg == 0 || deg >= self.m {
            return Err(Error::NotADivisor);
        }
        Ok((self.from_poly(&q)?, self.from_poly(g)?))
    }

    /// Evaluates the known sufficient and necessary division criteria for
    /// `f = t^m - a`, each only under its hypotheses.
    pub fn division_prechecks(&self) -> Result<Vec<Precheck>> {
        use PrecheckCriterion::*;
        use PrecheckVerdict::*;

        let a = self.cyclic_constant().ok_or_else(|| {
            Error::HypothesisViolation("division prechecks need f = t^m - a".into())
        })?;
        let tower = self.tower();
        let (k, f) = (tower.top(), tower.base());
        let gen = self.generator();
        let m = self.m;
        let n = tower.degree() as usize;
        let proper_a = !tower.in_base(a);
        let m_ok = m == 2
            || m == 3
            || (m >= 5
                && crate::fields::is_prime(m as u64)
                && primitive_root_of_unity(f, m as u64).is_some());
        let hyp = proper_a && m_ok;

        let mut out = Vec::new();
        let mut push = |criterion, verdict| out.push(Precheck { criterion, verdict });

        if hyp {
            let image = tower.partial_norm_image(&gen, m)?;
            push(
                TwistedNormEquation,
                if image.contains(a) {
                    NotDivision
                } else {
                    Division
                },
            );

            let norm_a = tower.norm(a);
            let norm_image: Vec<Elem> = {
                let mut v: Vec<Elem> = k.nonzero_elements().map(|x| tower.norm(x)).collect();
                v.sort();
                v.dedup();
                v
            };
            let norm_powers: Vec<Elem> = norm_image.iter().map(|&x| f.pow(x, m as u64)).collect();
            push(
                NormOutsideNormPowers,
                if norm_powers.contains(&norm_a) {
                    Inconclusive
                } else {
                    Division
                },
            );
            let field_powers: Vec<Elem> =
                f.nonzero_elements().map(|x| f.pow(x, m as u64)).collect();
            push(
                NormOutsideFieldPowers,
                if field_powers.contains(&norm_a) {
                    Inconclusive
                } else {
                    Division
                },
            );
        } else {
            push(TwistedNormEquation, NotApplicable);
            push(NormOutsideNormPowers, NotApplicable);
            push(NormOutsideFieldPowers, NotApplicable);
        }

        let cyclic = n == m && proper_a;
        push(
            CyclicPrimeDegree,
            if cyclic && m_ok {
                Division
            } else {
                NotApplicable
            },
        );
        if cyclic {
            let d = tower.subfield_degree(a) as usize;
            push(
                NotInProperSubfield,
                if d == n { Division } else { Inconclusive },
            );
            let s = tower.stabilizer_index(&gen, a) as usize;
            push(
                SplitRightNucleus,
                if n / s > 1 { NotDivision } else { Inconclusive },
            );
        } else {
            push(NotInProperSubfield, NotApplicable);
            push(SplitRightNucleus, NotApplicable);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{make_tower, GaloisGenerator};

    fn algebra(
        q: u64,
        n: u32,
        j: u32,
        m: usize,
        a: impl Fn(&ExtensionTower) -> Elem,
    ) -> PetitAlgebra {
        let tower = make_tower(q, n).unwrap();
        let gen = GaloisGenerator::new(&tower, j).unwrap();
        let a = a(&tower);
        PetitAlgebra::cyclic(tower, gen, m, a).unwrap()
    }

    fn f4_omega() -> PetitAlgebra {
        algebra(2, 2, 1, 2, |t| t.top().primitive())
    }

    #[test]
    fn multiplication_examples() {
        let alg = f4_omega();
        let k = alg.tower().top();
        let w = k.primitive();
        let t = alg.t_pow(1);
        assert_eq!(alg.mul(&t, &t).unwrap(), alg.scalar(w));
        let wt = alg.monomial(w, 1);
        assert_eq!(alg.mul(&t, &wt).unwrap(), alg.one());
        for idx in 0..alg.order() as u64 {
            let x = alg.element_at(idx);
            assert_eq!(alg.mul(&alg.one(), &x).unwrap(), x);
            assert_eq!(alg.mul(&x, &alg.one()).unwrap(), x);
            assert_eq!(alg.index_of(&x), idx);
        }
    }

    #[test]
    fn rejects_degenerate_and_foreign() {
        let tower = make_tower(2, 2).unwrap();
        let gen = GaloisGenerator::new(&tower, 1).unwrap();
        assert!(PetitAlgebra::cyclic(tower.clone(), gen, 1, tower.top().primitive()).is_err());
        let a = f4_omega();
        let b = algebra(2, 2, 1, 2, |t| t.top().one());
        assert_eq!(a.mul(&a.one(), &b.one()).unwrap_err(), Error::OwnerMismatch);
    }

    #[test]
    fn associator_witness() {
        let alg = f4_omega();
        assert!(!alg.is_associative());
        let basis = alg.f_basis();
        let mut found = false;
        for x in &basis {
            for y in &basis {
                for z in &basis {
                    let v = alg.associator(x, y, z).unwrap();
                    found |= !v.is_zero();
                    assert!(alg.associator(&alg.one(), y, z).unwrap().is_zero());
                }
            }
        }
        assert!(found);
        assert!(algebra(2, 2, 1, 2, |t| t.top().one()).is_associative());
    }

    #[test]
    fn nuclei_of_the_16_element_semifield() {
        let alg = f4_omega();
        let rep = alg.nuclei();
        assert_eq!(rep.dims(), [2, 2, 2, 1]);
        let k = alg.k_subspace();
        assert!(alg.same_subspace(&rep.left, &k));
        assert!(alg.same_subspace(&rep.middle, &k));
        assert!(alg.same_subspace(&rep.right, &k));
        assert!(alg.same_subspace(&rep.center, &alg.f_subspace()));
        assert_eq!(rep.right_matches_prediction, Some(true));
    }

    #[test]
    fn division_examples() {
        let alg = f4_omega();
        assert!(alg.is_division().unwrap());
        assert!(alg.all_right_invertible().unwrap());

        let f8 = algebra(2, 3, 1, 2, |t| t.top().primitive());
        assert!(!f8.is_division().unwrap());
        let k = f8.tower().top();
        let w = k.primitive();
        let g = f8.ring().poly(vec![k.pow(w, 5), k.one()]);
        let (q, g) = f8.zero_divisors_from_divisor(&g).unwrap();
        assert!(f8.mul(&q, &g).unwrap().is_zero());
        assert_eq!(q, f8.element(vec![k.pow(w, 3), k.one()]).unwrap());

        let f8c = algebra(2, 3, 1, 3, |t| t.top().primitive());
        assert!(f8c.is_division().unwrap());
    }

    #[test]
    fn matrices() {
        let alg = f4_omega();
        let k = alg.tower().top();
        let w = k.primitive();
        let rt = alg.right_mult_matrix_k(&alg.t_pow(1)).unwrap();
        assert_eq!(
            rt,
            Matrix::from_rows(vec![vec![Elem::ZERO, w], vec![k.one(), Elem::ZERO]])
        );
        assert_eq!(
            alg.right_mult_matrix_k(&alg.one()).unwrap(),
            Matrix::identity(k, 2)
        );
        assert_eq!(
            alg.mult_matrix_f(&alg.one(), Side::Left).unwrap(),
            Matrix::identity(alg.tower().base(), 4)
        );
        for idx in 0..alg.order() as u64 {
            let x = alg.element_at(idx);
            let [x0, x1] = [x.coeffs()[0], x.coeffs()[1]];
            let expected = Matrix::from_rows(vec![
                vec![x0, k.mul(w, alg.ring().sigma_pow(1, x1))],
                vec![x1, alg.ring().sigma_pow(1, x0)],
            ]);
            assert_eq!(alg.right_mult_matrix_k(&x).unwrap(), expected);
            if idx > 0 {
                let r = alg.mult_matrix_f(&x, Side::Right).unwrap();
                assert_eq!(r.rank(alg.tower().base()), 4);
            }
        }
    }

    #[test]
    fn prechecks_on_small_cases() {
        use PrecheckCriterion::*;
        use PrecheckVerdict::*;
        let verdict = |alg: &PetitAlgebra, c| {
            alg.division_prechecks()
                .unwrap()
                .into_iter()
                .find(|p| p.criterion == c)
                .unwrap()
                .verdict
        };
        let alg = f4_omega();
        assert_eq!(verdict(&alg, TwistedNormEquation), Division);
        assert_eq!(verdict(&alg, NotInProperSubfield), Division);
        assert_eq!(verdict(&alg, SplitRightNucleus), Inconclusive);
        let f8 = algebra(2, 3, 1, 2, |t| t.top().primitive());
        assert_eq!(verdict(&f8, TwistedNormEquation), NotDivision);
        assert_eq!(verdict(&f8, CyclicPrimeDegree), NotApplicable);
    }
}
