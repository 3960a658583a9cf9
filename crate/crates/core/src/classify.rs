//! Isomorphism and isotopy of nonassociative cyclic algebras
//! `(K/F, σ, a) = K[t;σ]/K[t;σ](t^m - a)`, the exhaustive isomorphism oracle,
//! the class census and the explicit parametrizations in odd characteristic.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::fields::{
    gcd, generators, is_prime, primitive_root_of_unity, Elem, ExtensionTower, GaloisGenerator,
    NormImage,
};
use crate::linalg::span_rank;
use crate::petit::{AlgebraElement, PetitAlgebra};
use crate::{make_tower, par, Error, Result};

/// Largest algebra the isomorphism oracle will search.
pub const ORACLE_CAP: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IsoStatus {
    Isomorphic,
    NotIsomorphic,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    Criterion,
    NormObstruction,
    CrossGeneratorRule,
    Oracle,
    NucleusMismatch,
    DimensionMismatch,
}

/// `τ = Frob^tau` and `k` with `τ(a) = k·σ(k)⋯σ^{m-1}(k)·b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub tau: u32,
    pub k: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub status: IsoStatus,
    pub witness: Option<Witness>,
    pub reason: Reason,
}

impl IsoVerdict {
    fn new(status: IsoStatus, reason: Reason) -> Self {
        IsoVerdict {
            status,
            witness: None,
            reason,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IsotopyStatus {
    Isotopic,
    NotIsotopic,
    Unsupported,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotopyVerdict {
    pub status: IsotopyStatus,
    pub reason: Option<Reason>,
}

/// Isomorphism tests for `(K/F, σ, a)` at fixed `K`, `σ`, `m`, sharing one
/// enumeration of the partial norm image.
#[derive(Clone, Debug)]
pub struct Classifier {
    tower: Arc<ExtensionTower>,
    gen: GaloisGenerator,
    m: usize,
    image: NormImage,
}

impl Classifier {
    pub fn new(tower: Arc<ExtensionTower>, gen: GaloisGenerator, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter("m must be at least 2".into()));
        }
        let image = tower.partial_norm_image(&gen, m)?;
        Ok(Classifier {
            tower,
            gen,
            m,
            image,
        })
    }

    pub fn tower(&self) -> &Arc<ExtensionTower> {
        &self.tower
    }

    pub fn generator(&self) -> GaloisGenerator {
        self.gen
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// Whether the criterion is an equivalence (`n ≥ m - 1`).
    pub fn is_decisive(&self) -> bool {
        self.tower.degree() as usize + 1 >= self.m
    }

    fn check_outside(&self, a: Elem) -> Result<()> {
        if a.is_zero() || self.tower.in_base(a) || !self.tower.top().contains(a) {
            return Err(Error::HypothesisViolation(format!(
                "{} is not in K \\ F",
                self.tower.top().display(a)
            )));
        }
        Ok(())
    }

    /// `(K/F,σ,a) ≅ (K/F,σ,b)` iff `τ(a) b^{-1}` is a partial norm for some
    /// `τ ∈ Gal(K/F)`; only the "if" direction when `n < m - 1`.
    pub fn iso_criterion(&self, a: Elem, b: Elem) -> Result<IsoVerdict> {
        self.check_outside(a)?;
        self.check_outside(b)?;
        let k = self.tower.top();
        for tau in 0..self.tower.degree() {
            let c = k.div(self.tower.frobenius(a, tau), b);
            if let Some(w) = self.image.witness(c) {
                return Ok(IsoVerdict {
                    status: IsoStatus::Isomorphic,
                    witness: Some(Witness { tau, k: w }),
                    reason: Reason::Criterion,
                });
            }
        }
        let status = if self.is_decisive() {
            IsoStatus::NotIsomorphic
        } else {
            IsoStatus::Inconclusive
        };
        Ok(IsoVerdict::new(status, Reason::Criterion))
    }

    /// `N(a) ∉ N(K^×)^m N(b)` forces non-isomorphism.
    pub fn norm_obstruction(&self, a: Elem, b: Elem) -> Option<IsoVerdict> {
        let tower = &self.tower;
        if !self.is_decisive() || self.check_outside(a).is_err() || self.check_outside(b).is_err() {
            return None;
        }
        let f = tower.base();
        let ratio = f.div(tower.norm(a), tower.norm(b));
        let blocked = !tower
            .top()
            .nonzero_elements()
            .any(|k| f.pow(tower.norm(k), self.m as u64) == ratio);
        blocked.then(|| IsoVerdict::new(IsoStatus::NotIsomorphic, Reason::NormObstruction))
    }

    /// All `b` with `(K/F,σ,b) ≅ (K/F,σ,a)` by the criterion: `⋃_τ τ(a)·H`
    /// for the norm image `H`. Sorted.
    pub fn class_of(&self, a: Elem) -> Vec<Elem> {
        let k = self.tower.top();
        let mut out: BTreeSet<Elem> = BTreeSet::new();
        let image = self.image.elements();
        for tau in 0..self.tower.degree() {
            let ta = self.tower.frobenius(a, tau);
            // τ(a) b^{-1} ∈ H  ⟺  b ∈ τ(a) H
            out.extend(image.iter().map(|&h| k.mul(ta, h)));
        }
        out.into_iter().collect()
    }
}

fn same_setup(a: &PetitAlgebra, b: &PetitAlgebra) -> bool {
    a.tower() == b.tower() && a.generator() == b.generator() && a.degree() == b.degree()
}

fn cyclic_constant(alg: &PetitAlgebra) -> Result<Elem> {
    alg.cyclic_constant()
        .ok_or_else(|| Error::HypothesisViolation("the modulus must be t^m - a".into()))
}

/// [`Classifier::iso_criterion`] for two algebras over the same `K`, `σ`, `m`.
pub fn iso_criterion(a: &PetitAlgebra, b: &PetitAlgebra) -> Result<IsoVerdict> {
    if !same_setup(a, b) {
        return Err(Error::HypothesisViolation(
            "the criterion needs the same field, twist and degree".into(),
        ));
    }
    let c = Classifier::new(a.tower().clone(), a.generator(), a.degree())?;
    c.iso_criterion(cyclic_constant(a)?, cyclic_constant(b)?)
}

/// [`Classifier::norm_obstruction`] for two algebras over the same `K`, `σ`, `m`.
pub fn norm_obstruction(a: &PetitAlgebra, b: &PetitAlgebra) -> Result<Option<IsoVerdict>> {
    if !same_setup(a, b) {
        return Ok(None);
    }
    let c = Classifier::new(a.tower().clone(), a.generator(), a.degree())?;
    Ok(c.norm_obstruction(cyclic_constant(a)?, cyclic_constant(b)?))
}

/// An isomorphism `H: A → B` with `H|_K = Frob^tau` and `H(t) = image_of_t`,
/// so `H(Σ x_i t^i) = Σ τ(x_i)·u^{(i)}` with `u^{(i)} = u ∘ u^{(i-1)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoMap {
    pub tau: u32,
    pub image_of_t: AlgebraElement,
}

impl IsoMap {
    /// `k` when `H(t) = k t`.
    pub fn monomial_factor(&self) -> Option<Elem> {
        let c = self.image_of_t.coeffs();
        c.iter()
            .enumerate()
            .all(|(i, x)| (i == 1) != x.is_zero())
            .then(|| c[1])
    }

    pub fn apply(
        &self,
        a: &PetitAlgebra,
        b: &PetitAlgebra,
        x: &AlgebraElement,
    ) -> Result<AlgebraElement> {
        let powers = t_image_powers(b, self.image_of_t.coeffs());
        let mut y = b.zero();
        for (i, &xi) in x.coeffs().iter().enumerate() {
            let term = b.scalar(a.tower().frobenius(xi, self.tau));
            let term = b.mul(&term, &b.element(powers[i].clone())?)?;
            y = b.add(&y, &term)?;
        }
        Ok(y)
    }
}

fn t_image_powers(b: &PetitAlgebra, u: &[Elem]) -> Vec<Vec<Elem>> {
    let mut powers = Vec::with_capacity(b.degree());
    powers.push(b.one().coeffs().to_vec());
    for i in 1..b.degree() {
        let next = b.mul_coeffs(u, &powers[i - 1]);
        powers.push(next);
    }
    powers
}

/// Products of basis pairs of `A`, shared by all candidates `(τ, u)`.
struct CandidateCheck<'a> {
    a: &'a PetitAlgebra,
    b: &'a PetitAlgebra,
    basis: Vec<Vec<Elem>>,
    products: Vec<Vec<Vec<Elem>>>,
}

impl<'a> CandidateCheck<'a> {
    fn new(a: &'a PetitAlgebra, b: &'a PetitAlgebra) -> Self {
        let basis: Vec<Vec<Elem>> = a.f_basis().iter().map(|x| x.coeffs().to_vec()).collect();
        let products = basis
            .iter()
            .map(|x| basis.iter().map(|y| a.mul_coeffs(x, y)).collect())
            .collect();
        CandidateCheck {
            a,
            b,
            basis,
            products,
        }
    }

    fn accepts(&self, tau: u32, u: &[Elem]) -> bool {
        let (a, b) = (self.a, self.b);
        let tower = a.tower();
        let powers = t_image_powers(b, u);
        let h = |x: &[Elem]| -> Vec<Elem> {
            let mut acc = vec![Elem::ZERO; b.degree()];
            for (i, &xi) in x.iter().enumerate() {
                if !xi.is_zero() {
                    let term = b.scale_coeffs(tower.frobenius(xi, tau), &powers[i]);
                    acc = b.add_coeffs(&acc, &term);
                }
            }
            acc
        };
        let images: Vec<Vec<Elem>> = self.basis.iter().map(|x| h(x)).collect();
        for (i, x) in images.iter().enumerate() {
            for (j, y) in images.iter().enumerate() {
                if h(&self.products[i][j]) != b.mul_coeffs(x, y) {
                    return false;
                }
            }
        }
        let coords: Vec<Vec<Elem>> = images.iter().map(|x| b.f_coords_raw(x)).collect();
        span_rank(tower.base(), &coords) == a.dimension()
    }
}

/// Whether `map` is a multiplicative bijection `A → B`.
pub fn is_isomorphism(a: &PetitAlgebra, b: &PetitAlgebra, map: &IsoMap) -> bool {
    a.tower() == b.tower()
        && a.degree() == b.degree()
        && map.image_of_t.coeffs().len() == b.degree()
        && CandidateCheck::new(a, b).accepts(map.tau, map.image_of_t.coeffs())
}

/// Exhaustive search over `τ ∈ Gal(K/F)` and `u = H(t) ∈ B` for an
/// isomorphism `A → B`; returns the first in the order `(τ, index of u)`.
pub fn brute_force_iso(a: &PetitAlgebra, b: &PetitAlgebra) -> Result<Option<IsoMap>> {
    if a.tower() != b.tower() {
        return Err(Error::HypothesisViolation(
            "the oracle needs one field tower".into(),
        ));
    }
    if !a.is_proper() || !b.is_proper() {
        return Err(Error::HypothesisViolation(
            "the oracle needs non-right-invariant moduli".into(),
        ));
    }
    let size = a.order().max(b.order());
    if size > ORACLE_CAP as u128 {
        return Err(Error::SizeCapExceeded {
            needed: size,
            cap: ORACLE_CAP,
        });
    }
    if a.degree() != b.degree() {
        return Ok(None);
    }
    let n = a.tower().degree() as u64;
    let ctx = CandidateCheck::new(a, b);
    let b_size = b.order() as u64;
    let hit = par::find_first(n * b_size, |idx| {
        ctx.accepts((idx / b_size) as u32, &b.coeffs_at(idx % b_size))
    });
    Ok(hit.map(|idx| IsoMap {
        tau: (idx / b_size) as u32,
        image_of_t: b.element_at(idx % b_size),
    }))
}

/// Isomorphism verdict for `(K/F,σ₁,a₁)` against `(K'/F',σ₂,a₂)`.
pub fn cross_generator_verdict(a: &PetitAlgebra, b: &PetitAlgebra) -> Result<IsoVerdict> {
    let (a1, a2) = (cyclic_constant(a)?, cyclic_constant(b)?);
    for (alg, c) in [(a, a1), (b, a2)] {
        if !alg.is_proper() || c.is_zero() || alg.tower().in_base(c) {
            return Err(Error::HypothesisViolation(
                "both algebras must be proper with a ∈ K \\ F".into(),
            ));
        }
    }
    if a.tower() != b.tower() {
        return Ok(IsoVerdict::new(
            IsoStatus::NotIsomorphic,
            Reason::NucleusMismatch,
        ));
    }
    if a.degree() != b.degree() {
        return Ok(IsoVerdict::new(
            IsoStatus::NotIsomorphic,
            Reason::DimensionMismatch,
        ));
    }
    if a.generator() == b.generator() {
        return iso_criterion(a, b);
    }
    let n = a.tower().degree() as usize;
    if n + 1 >= a.degree() {
        return Ok(IsoVerdict::new(
            IsoStatus::NotIsomorphic,
            Reason::CrossGeneratorRule,
        ));
    }
    match brute_force_iso(a, b) {
        Ok(found) => Ok(IsoVerdict::new(
            if found.is_some() {
                IsoStatus::Isomorphic
            } else {
                IsoStatus::NotIsomorphic
            },
            Reason::Oracle,
        )),
        Err(Error::SizeCapExceeded { .. }) => Ok(IsoVerdict::new(
            IsoStatus::Inconclusive,
            Reason::CrossGeneratorRule,
        )),
        Err(e) => Err(e),
    }
}

/// Isotopy for nonassociative cyclic algebras with `n = m ≥ 3`: isotopic iff
/// same generator and isomorphic. Anything else is `Unsupported`.
pub fn isotopy_verdict(a: &PetitAlgebra, b: &PetitAlgebra) -> Result<IsotopyVerdict> {
    let n = a.tower().degree() as usize;
    let supported = a.tower() == b.tower()
        && a.degree() == b.degree()
        && n == a.degree()
        && n >= 3
        && a.is_proper()
        && b.is_proper()
        && a.cyclic_constant().is_some()
        && b.cyclic_constant().is_some();
    if !supported {
        return Ok(IsotopyVerdict {
            status: IsotopyStatus::Unsupported,
            reason: None,
        });
    }
    if a.generator() != b.generator() {
        return Ok(IsotopyVerdict {
            status: IsotopyStatus::NotIsotopic,
            reason: Some(Reason::CrossGeneratorRule),
        });
    }
    let v = iso_criterion(a, b)?;
    let status = match v.status {
        IsoStatus::Isomorphic => IsotopyStatus::Isotopic,
        IsoStatus::NotIsomorphic => IsotopyStatus::NotIsotopic,
        IsoStatus::Inconclusive => IsotopyStatus::Unsupported,
    };
    Ok(IsotopyVerdict {
        status,
        reason: Some(v.reason),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusResult {
    pub q: u64,
    pub m: usize,
    pub j: u32,
    /// Least element of each class, ascending.
    pub representatives: Vec<Elem>,
    pub classes: Vec<Vec<Elem>>,
    pub count: usize,
    pub formula_count: Option<u64>,
}

/// Number of isomorphism classes per generator for prime `m`.
pub fn formula_count(q: u64, m: u64) -> Option<u64> {
    if !is_prime(m) {
        return None;
    }
    let qm = q.checked_pow(m as u32)?;
    let denom = m * (q - 1);
    Some(if (q - 1) % m == 0 {
        m - 1 + (qm - q - (q - 1) * (m - 1)) / denom
    } else {
        (qm - q) / denom
    })
}

/// Euler's totient.
pub fn euler_phi(m: u64) -> u64 {
    (1..=m).filter(|&k| gcd(k, m) == 1).count() as u64
}

/// Partition of `K ∖ F` (`K = F_{q^m}`) into isomorphism classes of
/// `(K/F, σ_j, a)`.
pub fn census(q: u64, m: usize, j: u32) -> Result<CensusResult> {
    let tower = make_tower(q, m as u32)?;
    census_in(&tower, m, j)
}

pub fn census_in(tower: &Arc<ExtensionTower>, m: usize, j: u32) -> Result<CensusResult> {
    if tower.degree() as usize != m {
        return Err(Error::HypothesisViolation("the census needs n = m".into()));
    }
    let gen = GaloisGenerator::new(tower, j)?;
    let c = Classifier::new(tower.clone(), gen, m)?;
    let mut assigned: BTreeSet<Elem> = BTreeSet::new();
    let mut classes = Vec::new();
    for a in tower.outside_base() {
        if assigned.contains(&a) {
            continue;
        }
        let class = c.class_of(a);
        assigned.extend(class.iter().copied());
        classes.push(class);
    }
    let q = tower.q() as u64;
    let count = classes.len();
    let formula = formula_count(q, m as u64);
    if let Some(expected) = formula {
        if expected != count as u64 {
            return Err(Error::Inconsistent(format!(
                "census q={q} m={m}: {count} classes, formula gives {expected}"
            )));
        }
    }
    Ok(CensusResult {
        q,
        m,
        j,
        representatives: classes.iter().map(|c| c[0]).collect(),
        classes,
        count,
        formula_count: formula,
    })
}

/// The census for every generator of `Gal(F_{q^m}/F_q)`.
pub fn census_all_generators(q: u64, m: usize) -> Result<Vec<CensusResult>> {
    let tower = make_tower(q, m as u32)?;
    generators(&tower)
        .into_iter()
        .map(|g| census_in(&tower, m, g.exponent()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ParamKind {
    S,
    S2,
    #[serde(rename = "S2-prime")]
    S2Prime,
}

/// Elements of `F` are stored as their images in `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Default)]
pub struct BaseData {
    pub zeta: Option<Elem>,
    pub beta: Option<Elem>,
    pub b: Option<Elem>,
    pub c: Option<Elem>,
    pub sqrt_c: Option<Elem>,
}

/// One `I ∈ 𝓘` with its coset representatives `(a_{i_1}, …, a_{i_k})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexBlock {
    pub set: Vec<usize>,
    pub coset_representatives: Vec<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamSet {
    pub q: u64,
    pub m: usize,
    pub kind: ParamKind,
    pub base: BaseData,
    pub members: Vec<Elem>,
    pub blocks: Vec<IndexBlock>,
}

fn odd_prime_power(q: u64) -> Result<()> {
    match crate::fields::prime_power(q) {
        Some((p, _)) if p != 2 => Ok(()),
        Some(_) => Err(Error::HypothesisViolation("q must be odd".into())),
        None => Err(Error::NotPrimePower(q)),
    }
}

/// Checks that `members` is a transversal of the census classes.
fn check_transversal(
    tower: &Arc<ExtensionTower>,
    m: usize,
    j: u32,
    members: &[Elem],
) -> Result<()> {
    let census = census_in(tower, m, j)?;
    let mut class_id: BTreeMap<Elem, usize> = BTreeMap::new();
    for (i, class) in census.classes.iter().enumerate() {
        for &x in class {
            class_id.insert(x, i);
        }
    }
    let hit: BTreeSet<usize> = members
        .iter()
        .map(|x| {
            class_id
                .get(x)
                .copied()
                .ok_or_else(|| Error::Inconsistent("member in F".into()))
        })
        .collect::<Result<_>>()?;
    if hit.len() != members.len() || hit.len() != census.count {
        return Err(Error::Inconsistent(format!(
            "{} members meet {} of {} classes",
            members.len(),
            hit.len(),
            census.count
        )));
    }
    Ok(())
}

/// `𝒮(F_{q^m}) = ⋃_{I ∈ 𝓘} K(I;1)` for an odd prime `m` with `m | q - 1`
/// and odd `q`, with respect to `σ = σ_j`.
pub fn parametrize_s(q: u64, m: usize, j: u32) -> Result<ParamSet> {
    odd_prime_power(q)?;
    parametrize_s_in(&make_tower(q, m as u32)?, m, j)
}

pub fn parametrize_s_in(tower: &Arc<ExtensionTower>, m: usize, j: u32) -> Result<ParamSet> {
    let q = tower.q() as u64;
    odd_prime_power(q)?;
    if m < 3 || !is_prime(m as u64) {
        return Err(Error::HypothesisViolation("m must be an odd prime".into()));
    }
    if tower.degree() as usize != m {
        return Err(Error::HypothesisViolation(
            "the parametrization needs n = m".into(),
        ));
    }
    let (f, k) = (tower.base(), tower.top());
    if primitive_root_of_unity(f, m as u64).is_none() {
        return Err(Error::HypothesisViolation(format!(
            "F_{q} has no primitive {m}th root of unity"
        )));
    }
    let gen = GaloisGenerator::new(tower, j)?;
    let mth_powers: BTreeSet<Elem> = f.nonzero_elements().map(|x| f.pow(x, m as u64)).collect();
    let b = f
        .nonzero_elements()
        .find(|x| !mth_powers.contains(x))
        .expect("non-mth power");
    let b_k = tower.embed(b);
    let beta = k
        .nonzero_elements()
        .find(|&x| k.pow(x, m as u64) == b_k)
        .ok_or_else(|| Error::Inconsistent("x^m - b has no root in K".into()))?;
    let zeta_k = k.div(gen.apply(tower, beta), beta);
    let zeta = tower
        .to_base(zeta_k)
        .ok_or_else(|| Error::Inconsistent("σ(β)/β is not in F".into()))?;

    let beta_pows: Vec<Elem> = (0..m).map(|i| k.pow(beta, i as u64)).collect();
    let units: Vec<Elem> = f.nonzero_elements().collect();
    let mut sets: Vec<Vec<usize>> = (1u32..1 << m)
        .filter(|&mask| mask != 1)
        .map(|mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    sets.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));

    let mut members = Vec::new();
    let mut blocks = Vec::new();
    for set in sets {
        let i0 = set[0];
        let rest = &set[1..];
        let deltas: Vec<Vec<Elem>> = (1..=m as u64)
            .map(|s| {
                rest.iter()
                    .map(|&i| f.pow(zeta, s * (i - i0) as u64))
                    .collect()
            })
            .collect();
        let mut reps: Vec<Vec<Elem>> = Vec::new();
        let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
        let total = (units.len() as u64).pow(rest.len() as u32);
        for idx in 0..total {
            let mut rem = idx;
            let mut tuple = vec![Elem::ZERO; rest.len()];
            for slot in tuple.iter_mut().rev() {
                *slot = units[(rem % units.len() as u64) as usize];
                rem /= units.len() as u64;
            }
            if seen.contains(&tuple) {
                continue;
            }
            for d in &deltas {
                seen.insert(tuple.iter().zip(d).map(|(&x, &y)| f.mul(x, y)).collect());
            }
            reps.push(tuple);
        }
        for rep in &reps {
            let mut a = beta_pows[i0];
            for (&i, &c) in rest.iter().zip(rep) {
                a = k.add(a, k.mul(tower.embed(c), beta_pows[i]));
            }
            members.push(a);
        }
        blocks.push(IndexBlock {
            set,
            coset_representatives: reps
                .into_iter()
                .map(|r| r.into_iter().map(|c| tower.embed(c)).collect())
                .collect(),
        });
    }
    check_transversal(tower, m, j, &members)?;
    Ok(ParamSet {
        q,
        m,
        kind: ParamKind::S,
        base: BaseData {
            zeta: Some(zeta_k),
            beta: Some(beta),
            b: Some(b_k),
            ..BaseData::default()
        },
        members,
        blocks,
    })
}

/// `𝒮_2(F_{q^2}) = {√c, 1 + s√c}` and `𝒮'(F_{q^2}) = {t + √c}` with `s`, `t`
/// over the least representatives of `F_q^×/{±1}` (and `t = 0`).
pub fn parametrize_s2(q: u64) -> Result<(ParamSet, ParamSet)> {
    odd_prime_power(q)?;
    parametrize_s2_in(&make_tower(q, 2)?)
}

pub fn parametrize_s2_in(tower: &Arc<ExtensionTower>) -> Result<(ParamSet, ParamSet)> {
    let q = tower.q() as u64;
    odd_prime_power(q)?;
    if tower.degree() != 2 {
        return Err(Error::HypothesisViolation(
            "the parametrization needs n = 2".into(),
        ));
    }
    let (f, k) = (tower.base(), tower.top());
    let squares: BTreeSet<Elem> = f.nonzero_elements().map(|x| f.mul(x, x)).collect();
    let c = f
        .nonzero_elements()
        .find(|x| !squares.contains(x))
        .expect("non-square");
    let c_k = tower.embed(c);
    let sqrt_c = k
        .nonzero_elements()
        .find(|&x| k.mul(x, x) == c_k)
        .ok_or_else(|| Error::Inconsistent("c has no square root in K".into()))?;
    let reps: Vec<Elem> = f.nonzero_elements().filter(|&s| s <= f.neg(s)).collect();

    let mut s2 = vec![sqrt_c];
    s2.extend(
        reps.iter()
            .map(|&s| k.add(k.one(), k.mul(tower.embed(s), sqrt_c))),
    );
    let mut s2p = vec![sqrt_c];
    s2p.extend(reps.iter().map(|&t| k.add(tower.embed(t), sqrt_c)));
    check_transversal(tower, 2, 1, &s2)?;
    check_transversal(tower, 2, 1, &s2p)?;

    let base = BaseData {
        c: Some(c_k),
        sqrt_c: Some(sqrt_c),
        ..BaseData::default()
    };
    let reps_k: Vec<Vec<Elem>> = reps.iter().map(|&s| vec![tower.embed(s)]).collect();
    let make = |kind, members| ParamSet {
        q,
        m: 2,
        kind,
        base: base.clone(),
        members,
        blocks: vec![IndexBlock {
            set: vec![0, 1],
            coset_representatives: reps_k.clone(),
        }],
    };
    Ok((make(ParamKind::S2, s2), make(ParamKind::S2Prime, s2p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(q: u64, n: u32, j: u32, m: usize, a: Elem) -> PetitAlgebra {
        let tower = make_tower(q, n).unwrap();
        let gen = GaloisGenerator::new(&tower, j).unwrap();
        PetitAlgebra::cyclic(tower, gen, m, a).unwrap()
    }

    #[test]
    fn criterion_examples() {
        let tower = make_tower(2, 2).unwrap();
        let gen = GaloisGenerator::new(&tower, 1).unwrap();
        let c = Classifier::new(tower.clone(), gen, 2).unwrap();
        let k = tower.top();
        let w = k.primitive();
        let same = c.iso_criterion(w, w).unwrap();
        assert_eq!(same.status, IsoStatus::Isomorphic);
        // least k with N(k) = 1 is w itself (w·w² = 1)
        assert_eq!(same.witness, Some(Witness { tau: 0, k: w }));
        let v = c.iso_criterion(w, k.mul(w, w)).unwrap();
        assert_eq!(v.status, IsoStatus::Isomorphic);
        assert_eq!(v.witness.unwrap().tau, 1);
        assert_eq!(tower.partial_norm(&gen, 2, k.one()), k.one());
        assert!(c.iso_criterion(k.one(), w).is_err());
    }

    #[test]
    fn witnesses_are_sound() {
        for (q, n, m) in [(2, 3, 2), (2, 3, 3), (3, 2, 2), (4, 3, 3)] {
            let tower = make_tower(q, n).unwrap();
            for gen in generators(&tower) {
                let c = Classifier::new(tower.clone(), gen, m).unwrap();
                let k = tower.top();
                for a in tower.outside_base() {
                    for b in tower.outside_base() {
                        let v = c.iso_criterion(a, b).unwrap();
                        if let Some(w) = v.witness {
                            let rhs = k.mul(tower.partial_norm(&gen, m, w.k), b);
                            assert_eq!(tower.frobenius(a, w.tau), rhs);
                        }
                        if c.norm_obstruction(a, b).is_some() {
                            assert_eq!(v.status, IsoStatus::NotIsomorphic);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn norm_obstruction_over_f64() {
        // cubes in F_4^× are trivial, so N(a)/N(b) ≠ 1 is an obstruction
        let tower = make_tower(4, 3).unwrap();
        let gen = GaloisGenerator::new(&tower, 1).unwrap();
        let c = Classifier::new(tower.clone(), gen, 3).unwrap();
        let outside = tower.outside_base();
        let a = outside[0];
        let b = *outside
            .iter()
            .find(|&&b| tower.norm(b) != tower.norm(a))
            .unwrap();
        assert!(c.norm_obstruction(a, b).is_some());
        assert!(c.norm_obstruction(a, a).is_none());
    }

    #[test]
    fn oracle_identity_and_lemma_shape() {
        let tower = make_tower(2, 2).unwrap();
        let w = tower.top().primitive();
        let a = cyclic(2, 2, 1, 2, w);
        let identity = IsoMap {
            tau: 0,
            image_of_t: a.t_pow(1),
        };
        assert!(is_isomorphism(&a, &a, &identity));
        let x = a.element_at(7);
        assert_eq!(identity.apply(&a, &a, &x).unwrap(), x);
        let first = brute_force_iso(&a, &a).unwrap().unwrap();
        assert_eq!(first.tau, 0);
        assert_eq!(first.monomial_factor(), Some(tower.top().primitive()));
        assert!(is_isomorphism(&a, &a, &first));
        let y = a.element_at(11);
        let lhs = first.apply(&a, &a, &a.mul(&x, &y).unwrap()).unwrap();
        let rhs = a
            .mul(
                &first.apply(&a, &a, &x).unwrap(),
                &first.apply(&a, &a, &y).unwrap(),
            )
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cross_generator_rules() {
        let t8 = make_tower(2, 3).unwrap();
        let w8 = t8.top().primitive();
        let a = cyclic(2, 3, 1, 3, w8);
        let b = cyclic(2, 3, 2, 3, w8);
        assert_eq!(brute_force_iso(&a, &b).unwrap(), None);
        let v = cross_generator_verdict(&a, &b).unwrap();
        assert_eq!(
            (v.status, v.reason),
            (IsoStatus::NotIsomorphic, Reason::CrossGeneratorRule)
        );
        let f4 = cyclic(2, 2, 1, 2, make_tower(2, 2).unwrap().top().primitive());
        let f8 = cyclic(2, 3, 1, 2, w8);
        let v = cross_generator_verdict(&f4, &f8).unwrap();
        assert_eq!(v.reason, Reason::NucleusMismatch);
        let iso = isotopy_verdict(&a, &b).unwrap();
        assert_eq!(iso.status, IsotopyStatus::NotIsotopic);
        assert_eq!(
            isotopy_verdict(&f4, &f4).unwrap().status,
            IsotopyStatus::Unsupported
        );
        assert_eq!(
            isotopy_verdict(&a, &a).unwrap().status,
            IsotopyStatus::Isotopic
        );
    }

    #[test]
    fn formula_values() {
        assert_eq!(formula_count(2, 3), Some(2));
        assert_eq!(formula_count(3, 2), Some(2));
        assert_eq!(formula_count(5, 2), Some(3));
        assert_eq!(formula_count(4, 3), Some(8));
        assert_eq!(formula_count(7, 3), Some(20));
        assert_eq!(formula_count(2, 4), None);
        assert_eq!(euler_phi(3), 2);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn census_small() {
        let r = census(2, 3, 1).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.classes.iter().map(Vec::len).sum::<usize>(), 6);
        let all = census_all_generators(4, 3).unwrap();
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|r| r.count == 8));
    }

    #[test]
    fn parametrizations() {
        let (s2, s2p) = parametrize_s2(3).unwrap();
        assert_eq!((s2.members.len(), s2p.members.len()), (2, 2));
        assert_eq!(parametrize_s2(5).unwrap().0.members.len(), 3);
        assert!(parametrize_s2(4).is_err());
        assert!(parametrize_s(4, 3, 1).is_err());
        assert!(parametrize_s(5, 3, 1).is_err());
        let s = parametrize_s(7, 3, 1).unwrap();
        assert_eq!(s.members.len(), 20);
        let sizes: Vec<usize> = s
            .blocks
            .iter()
            .map(|b| b.coset_representatives.len())
            .collect();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2, 12]);
    }
}
