//! Prime-power finite fields in a polynomial basis over the prime field, and
//! the tower `F_q ⊂ F_{q^n}` with its Frobenius action, norms and partial
//! norms.
//!
//! Elements are small integer handles ([`Elem`]) interpreted by the owning
//! [`FiniteField`]. The handle of an element is its rank in the canonical
//! order: coordinate vectors (constant term first) compared
//! lexicographically. "Least" always refers to that order.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default bound on field sizes and enumeration counts.
pub const DEFAULT_SIZE_CAP: u64 = 1 << 20;

const NONE: u32 = u32::MAX;

/// A field element handle. Integer order coincides with the canonical
/// lexicographic order on coordinate vectors.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^e`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Dense polynomials over F_p, constant term first.
mod fp_poly {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn inv(x: u32, p: u32) -> u32 {
        let (mut r, mut b, mut k) = (1u64, x as u64 % p as u64, p as u64 - 2);
        while k > 0 {
            if k & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            k >>= 1;
        }
        r as u32
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let len = a.len().max(b.len());
        let mut out: Vec<u32> = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = (r[top] as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                let sub = (c as u64 * mi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
        rem(&prod, m, p)
    }

    pub fn powmod(base: &[u32], mut k: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = rem(&[1], m, p);
        let mut b = rem(base, m, p);
        while k > 0 {
            if k & 1 == 1 {
                result = mulmod(&result, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            k >>= 1;
        }
        result
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or: `f` of degree `d` is irreducible iff `gcd(x^{p^i} - x, f) = 1`
    /// for `1 ≤ i ≤ d/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let d = f.len() - 1;
        if d == 0 {
            return false;
        }
        let x = vec![0, 1];
        let mut h = rem(&x, f, p);
        for _ in 1..=d / 2 {
            h = powmod(&h, p as u64, f, p);
            let g = gcd(&sub(&h, &x, p), f, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

/// The prime-field JSON description `{p, e, modulus}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
}

/// `F_{p^e} = F_p[x]/(μ)` with `μ` the lexicographically least monic
/// irreducible of degree `e` (constant term first).
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    e: u32,
    order: u32,
    modulus: Vec<u32>,
    // weights[i] = p^(e-1-i): the handle digit of the x^i coordinate.
    weights: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    primitive: Elem,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

/// Builds the canonical `F_{p^e}` under [`DEFAULT_SIZE_CAP`].
pub fn make_field(p: u64, e: u32) -> Result<FiniteField> {
    FiniteField::with_cap(p, e, DEFAULT_SIZE_CAP)
}

/// Least monic irreducible of degree `e` over F_p, constant term first.
pub fn canonical_modulus(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for idx in 0..count {
        // c_0 is the most significant digit of idx.
        let mut f = vec![0u32; e as usize + 1];
        let mut rest = idx;
        for i in (0..e as usize).rev() {
            f[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        f[e as usize] = 1;
        if fp_poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteField {
    pub fn with_cap(p: u64, e: u32, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if e == 0 {
            return Err(Error::InvalidParameter(
                "extension degree must be positive".into(),
            ));
        }
        let order = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
        if order > cap as u128 || order > (1u128 << 31) {
            return Err(Error::SizeCapExceeded { needed: order, cap });
        }
        let (p, order) = (p as u32, order as u32);
        let modulus = canonical_modulus(p, e);
        let weights: Vec<u32> = (0..e).map(|i| p.pow(e - 1 - i)).collect();

        let mut field = FiniteField {
            p,
            e,
            order,
            modulus,
            weights,
            exp: Vec::new(),
            log: Vec::new(),
            primitive: Elem::ZERO,
        };

        let group = (order - 1) as u64;
        let factors = prime_factors(group);
        let one = field.poly_of(field.one());
        let primitive = (1..order)
            .map(Elem)
            .find(|&g| {
                let gp = field.poly_of(g);
                factors
                    .iter()
                    .all(|&r| fp_poly::powmod(&gp, group / r, &field.modulus, p) != one)
            })
            .expect("the multiplicative group of a finite field is cyclic");

        let gp = field.poly_of(primitive);
        let mut exp = Vec::with_capacity(group as usize);
        let mut log = vec![NONE; order as usize];
        let mut cur = one.clone();
        for k in 0..group as u32 {
            let h = field.elem_of(&cur);
            exp.push(h.0);
            log[h.0 as usize] = k;
            cur = fp_poly::mulmod(&cur, &gp, &field.modulus, p);
        }
        debug_assert_eq!(cur, one);
        field.exp = exp;
        field.log = log;
        field.primitive = primitive;
        Ok(field)
    }

    fn poly_of(&self, x: Elem) -> Vec<u32> {
        let mut v = self.coords(x);
        fp_poly::trim(&mut v);
        v
    }

    fn elem_of(&self, poly: &[u32]) -> Elem {
        Elem(poly.iter().zip(&self.weights).map(|(c, w)| c * w).sum())
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            e: self.e,
            modulus: self.modulus.clone(),
        }
    }

    /// The least primitive element; the `w` of the `w^k` notation.
    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem(self.weights[0])
    }

    /// Image of `c ∈ F_p` in this field.
    pub fn from_prime(&self, c: u32) -> Elem {
        Elem((c % self.p) * self.weights[0])
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.order).map(Elem)
    }

    /// Coordinates over F_p, constant term first.
    pub fn coords(&self, x: Elem) -> Vec<u32> {
        self.weights.iter().map(|w| (x.0 / w) % self.p).collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Elem> {
        if coords.len() != self.e as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParameter(format!(
                "expected {} coordinates in 0..{}",
                self.e, self.p
            )));
        }
        Ok(self.elem_of(coords))
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.order
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let p = self.p;
        let (mut a, mut b, mut r, mut w) = (a.0, b.0, 0, 1);
        while a > 0 || b > 0 {
            r += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
            w *= p;
        }
        Elem(r)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let (mut a, mut r, mut w) = (a.0, 0, 1);
        while a > 0 {
            r += ((p - a % p) % p) * w;
            a /= p;
            w *= p;
        }
        Elem(r)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let group = self.order - 1;
        let k = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % group as u64;
        Elem(self.exp[k as usize])
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(!a.is_zero(), "inverse of zero");
        let group = self.order - 1;
        Elem(self.exp[((group - self.log[a.0 as usize]) % group) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return self.one();
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let group = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Elem(self.exp[((l * (k % group)) % group) as usize])
    }

    /// Discrete logarithm to base [`Self::primitive`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    /// `w^k` for the canonical primitive element `w`.
    pub fn exp(&self, k: u64) -> Elem {
        Elem(self.exp[(k % (self.order as u64 - 1)) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mul_order(&self, a: Elem) -> Option<u64> {
        let group = (self.order - 1) as u64;
        self.log(a).map(|l| group / gcd(l as u64, group))
    }

    /// Human-readable form: `0`, `1`, or `w^k`.
    pub fn display(&self, a: Elem) -> String {
        match self.log(a) {
            None => "0".into(),
            Some(0) => "1".into(),
            Some(1) => "w".into(),
            Some(k) => format!("w^{k}"),
        }
    }
}

/// A generator `σ = Frob^j` of `Gal(F_{q^n}/F_q)`, acting as `x ↦ x^{q^j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaloisGenerator {
    j: u32,
    n: u32,
}

impl GaloisGenerator {
    /// `σ = Frob^j`; requires `gcd(j, n) = 1` and `1 ≤ j < n`. For `n = 1` the
    /// only generator is the identity, written `j = 1`.
    pub fn new(tower: &ExtensionTower, j: u32) -> Result<Self> {
        let n = tower.degree();
        let ok = if n == 1 {
            j == 1
        } else {
            j >= 1 && j < n && gcd(j as u64, n as u64) == 1
        };
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "σ exponent j={j} does not generate Gal(F_q^{n}/F_q)"
            )));
        }
        Ok(GaloisGenerator { j, n })
    }

    pub fn exponent(&self) -> u32 {
        self.j
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// Frobenius exponent of `σ^i`.
    pub fn power_exponent(&self, i: u64) -> u32 {
        ((self.j as u64 * i) % self.n as u64) as u32
    }

    pub fn apply(&self, tower: &ExtensionTower, x: Elem) -> Elem {
        tower.frobenius(x, self.j)
    }

    /// `σ^i(x)`.
    pub fn apply_pow(&self, tower: &ExtensionTower, i: u64, x: Elem) -> Elem {
        tower.frobenius(x, self.power_exponent(i))
    }
}

/// The tower `F = F_q ⊂ K = F_{q^n}`. `K` is built directly as
/// `F_{p^{e·n}}`; `F` is embedded by sending its primitive element to the
/// least root in `K` of its minimal polynomial.
#[derive(Debug)]
pub struct ExtensionTower {
    base: FiniteField,
    top: FiniteField,
    n: u32,
    q: u32,
    embed: Vec<Elem>,
    base_of: Vec<u32>,
    // q^k mod (|K| - 1) for k in 0..n
    frob_exp: Vec<u64>,
    basis: Vec<Elem>,
    // F-coordinates of every K element in `basis`, flattened.
    coords: Vec<Elem>,
    cap: u64,
}

impl PartialEq for ExtensionTower {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.top == other.top && self.n == other.n
    }
}

impl Eq for ExtensionTower {}

/// Builds `F_q ⊂ F_{q^n}` under [`DEFAULT_SIZE_CAP`].
pub fn make_tower(q: u64, n: u32) -> Result<Arc<ExtensionTower>> {
    ExtensionTower::with_cap(q, n, DEFAULT_SIZE_CAP).map(Arc::new)
}

impl ExtensionTower {
    pub fn with_cap(q: u64, n: u32, cap: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if n == 0 {
            return Err(Error::InvalidParameter(
                "extension degree n must be positive".into(),
            ));
        }
        let base = FiniteField::with_cap(p, e, cap)?;
        let top = FiniteField::with_cap(p, e * n, cap)?;

        // Minimal polynomial of the primitive element of F over F_p.
        let g = base.primitive();
        let mut minpoly = vec![base.one()];
        for i in 0..e {
            let root = base.pow(g, (p as u64).pow(i));
            let mut next = vec![Elem::ZERO; minpoly.len() + 1];
            for (k, &c) in minpoly.iter().enumerate() {
                next[k + 1] = base.add(next[k + 1], c);
                next[k] = base.sub(next[k], base.mul(c, root));
            }
            minpoly = next;
        }
        let minpoly: Vec<u32> = minpoly
            .into_iter()
            .map(|c| {
                let cs = base.coords(c);
                debug_assert!(cs[1..].iter().all(|&d| d == 0));
                cs[0]
            })
            .collect();
        let eval = |z: Elem| {
            minpoly.iter().rev().fold(Elem::ZERO, |acc, &c| {
                top.add(top.mul(acc, z), top.from_prime(c))
            })
        };
        let root = top
            .nonzero_elements()
            .find(|&z| eval(z).is_zero())
            .ok_or_else(|| Error::Inconsistent("minimal polynomial has no root in K".into()))?;

        let mut embed = vec![Elem::ZERO; base.order() as usize];
        let mut base_of = vec![NONE; top.order() as usize];
        base_of[0] = 0;
        for k in 0..(base.order() - 1) as u64 {
            let x = base.exp(k);
            let y = top.pow(root, k);
            embed[x.0 as usize] = y;
            base_of[y.0 as usize] = x.0;
        }

        let group = (top.order() - 1) as u64;
        let mut frob_exp = Vec::with_capacity(n as usize);
        let mut acc = 1u64 % group.max(1);
        for _ in 0..n {
            frob_exp.push(acc);
            acc = acc * q % group.max(1);
        }

        let w = top.primitive();
        let basis: Vec<Elem> = (0..n as u64).map(|i| top.pow(w, i)).collect();
        let nn = n as usize;
        let mut coords = vec![Elem(NONE); top.order() as usize * nn];
        for idx in 0..top.order() as u64 {
            let mut digits = vec![Elem::ZERO; nn];
            let mut rest = idx;
            for d in digits.iter_mut().rev() {
                *d = Elem((rest % q) as u32);
                rest /= q;
            }
            let value = digits.iter().zip(&basis).fold(Elem::ZERO, |acc, (&c, &b)| {
                top.add(acc, top.mul(embed[c.0 as usize], b))
            });
            let slot = &mut coords[value.0 as usize * nn..(value.0 as usize + 1) * nn];
            if slot[0].0 != NONE {
                return Err(Error::Inconsistent("K-basis over F is dependent".into()));
            }
            slot.copy_from_slice(&digits);
        }

        Ok(ExtensionTower {
            base,
            top,
            n,
            q: q as u32,
            embed,
            base_of,
            frob_exp,
            basis,
            coords,
            cap,
        })
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn top(&self) -> &FiniteField {
        &self.top
    }

    /// `n = [K:F]`.
    pub fn degree(&self) -> u32 {
        self.n
    }

    /// `q = |F|`.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// Returns `Err(SizeCapExceeded)` when `needed` exceeds the cap.
    pub fn check_cap(&self, needed: u128) -> Result<()> {
        if needed > self.cap as u128 {
            Err(Error::SizeCapExceeded {
                needed,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    pub fn embed(&self, x: Elem) -> Elem {
        self.embed[x.0 as usize]
    }

    /// Preimage in `F` of an element of the base image.
    pub fn to_base(&self, x: Elem) -> Option<Elem> {
        let b = self.base_of[x.0 as usize];
        (b != NONE).then_some(Elem(b))
    }

    pub fn in_base(&self, x: Elem) -> bool {
        self.base_of[x.0 as usize] != NONE
    }

    /// The embedded copy of `F` inside `K`, in increasing order.
    pub fn base_image(&self) -> Vec<Elem> {
        let mut v: Vec<Elem> = self.embed.clone();
        v.sort();
        v
    }

    /// `x^{q^k}`.
    pub fn frobenius(&self, x: Elem, k: u32) -> Elem {
        if x.is_zero() {
            return x;
        }
        let group = (self.top.order() - 1) as u64;
        let l = self.top.log(x).unwrap() as u64;
        let e = self.frob_exp[(k % self.n) as usize];
        self.top.exp(l * e % group)
    }

    /// The F-basis `1, w, …, w^{n-1}` of `K`.
    pub fn f_basis(&self) -> &[Elem] {
        &self.basis
    }

    /// Coordinates of `x` over `F` in [`Self::f_basis`], as `F` elements.
    pub fn f_coords(&self, x: Elem) -> &[Elem] {
        let nn = self.n as usize;
        &self.coords[x.0 as usize * nn..(x.0 as usize + 1) * nn]
    }

    /// `N_{K/F}(x) = x^{(q^n-1)/(q-1)}`, returned as an element of `F`.
    pub fn norm(&self, x: Elem) -> Elem {
        if x.is_zero() {
            return Elem::ZERO;
        }
        let e = (self.top.order() as u64 - 1) / (self.q as u64 - 1);
        self.to_base(self.top.pow(x, e)).expect("norm lies in F")
    }

    /// `N_{m,σ}(k) = k σ(k) ⋯ σ^{m-1}(k)` in `K`.
    pub fn partial_norm(&self, gen: &GaloisGenerator, m: usize, k: Elem) -> Elem {
        (0..m as u64).fold(self.top.one(), |acc, i| {
            self.top.mul(acc, gen.apply_pow(self, i, k))
        })
    }

    /// `{N_{m,σ}(k) : k ∈ K^×}` with the least preimage of each value.
    pub fn partial_norm_image(&self, gen: &GaloisGenerator, m: usize) -> Result<NormImage> {
        self.check_cap(self.top.order() as u128)?;
        let mut preimage = vec![NONE; self.top.order() as usize];
        let mut size = 0;
        for k in self.top.nonzero_elements() {
            let v = self.partial_norm(gen, m, k);
            if preimage[v.0 as usize] == NONE {
                preimage[v.0 as usize] = k.0;
                size += 1;
            }
        }
        Ok(NormImage { preimage, size })
    }

    /// Least `d ≥ 1` with `x^{q^d} = x`; the degree over `F` of the subfield
    /// generated by `x`.
    pub fn subfield_degree(&self, x: Elem) -> u32 {
        (1..=self.n)
            .find(|&d| self.frobenius(x, d) == x)
            .unwrap_or(self.n)
    }

    /// Least `s ≥ 1` with `σ^s(a) = a`.
    pub fn stabilizer_index(&self, gen: &GaloisGenerator, a: Elem) -> u32 {
        (1..=self.n)
            .find(|&s| gen.apply_pow(self, s as u64, a) == a)
            .unwrap_or(self.n)
    }

    /// Elements of `K ∖ F` in canonical order.
    pub fn outside_base(&self) -> Vec<Elem> {
        self.top.elements().filter(|&x| !self.in_base(x)).collect()
    }
}

/// The image of a partial norm map on `K^×`, with a least preimage for each
/// member.
#[derive(Clone, Debug)]
pub struct NormImage {
    preimage: Vec<u32>,
    size: usize,
}

impl NormImage {
    pub fn contains(&self, x: Elem) -> bool {
        self.preimage[x.0 as usize] != NONE
    }

    /// Least `k` with `N_{m,σ}(k) = x`.
    pub fn witness(&self, x: Elem) -> Option<Elem> {
        let k = self.preimage[x.0 as usize];
        (k != NONE).then_some(Elem(k))
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn elements(&self) -> Vec<Elem> {
        (0..self.preimage.len() as u32)
            .map(Elem)
            .filter(|&x| self.contains(x))
            .collect()
    }
}

/// All generators of `Gal(K/F)`, ordered by exponent.
pub fn generators(tower: &ExtensionTower) -> Vec<GaloisGenerator> {
    let n = tower.degree();
    if n == 1 {
        return vec![GaloisGenerator { j: 1, n }];
    }
    (1..n)
        .filter(|&j| gcd(j as u64, n as u64) == 1)
        .map(|j| GaloisGenerator { j, n })
        .collect()
}

/// Least element of multiplicative order exactly `m`, if `m | |F|-1`.
pub fn primitive_root_of_unity(field: &FiniteField, m: u64) -> Option<Elem> {
    if m == 0 || (field.order() as u64 - 1) % m != 0 {
        return None;
    }
    field
        .nonzero_elements()
        .find(|&x| field.mul_order(x) == Some(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.order(), 2);
        assert_eq!(f2.elements().count(), 2);
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // x^3 + x^2 + 1 precedes x^3 + x + 1 when the constant term leads.
        let f8 = make_field(2, 3).unwrap();
        assert_eq!(f8.modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            make_field(4, 1).unwrap_err(),
            Error::NonPrimeCharacteristic(4)
        );
        assert!(matches!(
            make_field(2, 21),
            Err(Error::SizeCapExceeded { .. })
        ));
        assert!(matches!(make_tower(6, 2), Err(Error::NotPrimePower(6))));
        assert!(matches!(
            ExtensionTower::with_cap(2, 6, 32),
            Err(Error::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn handle_order_is_lexicographic() {
        let f9 = make_field(3, 2).unwrap();
        let mut prev: Option<Vec<u32>> = None;
        for x in f9.elements() {
            let c = f9.coords(x);
            if let Some(pc) = prev {
                assert!(pc < c);
            }
            assert_eq!(f9.from_coords(&c).unwrap(), x);
            prev = Some(c);
        }
    }

    #[test]
    fn field_axioms_exhaustive_f9_f8() {
        for (p, e) in [(3, 2), (2, 3), (5, 1)] {
            let f = make_field(p, e).unwrap();
            for a in f.elements() {
                assert_eq!(f.pow(a, f.order() as u64), a);
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                assert_eq!(f.mul(a, f.one()), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a)), f.one());
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn generators_by_euler_phi() {
        let exps = |q, n| -> Vec<u32> {
            generators(&make_tower(q, n).unwrap())
                .iter()
                .map(|g| g.exponent())
                .collect()
        };
        assert_eq!(exps(2, 2), vec![1]);
        assert_eq!(exps(2, 3), vec![1, 2]);
        assert_eq!(exps(2, 4), vec![1, 3]);
        assert_eq!(exps(3, 1), vec![1]);
        let t = make_tower(2, 4).unwrap();
        assert!(GaloisGenerator::new(&t, 2).is_err());
        assert!(GaloisGenerator::new(&t, 3).is_ok());
    }

    #[test]
    fn tower_basics() {
        let t = make_tower(2, 3).unwrap();
        let fixed: Vec<Elem> = t
            .top()
            .elements()
            .filter(|&x| t.frobenius(x, 1) == x)
            .collect();
        assert_eq!(fixed, t.base_image());
        assert_eq!(fixed.len(), 2);
        let t = make_tower(4, 3).unwrap();
        assert_eq!(t.base_image().len(), 4);
        assert_eq!(
            t.top()
                .elements()
                .filter(|&x| t.frobenius(x, 1) == x)
                .count(),
            4
        );
    }

    #[test]
    fn coordinates_round_trip() {
        let t = make_tower(3, 2).unwrap();
        for x in t.top().elements() {
            let back = t
                .f_coords(x)
                .iter()
                .zip(t.f_basis())
                .fold(Elem::ZERO, |acc, (&c, &b)| {
                    t.top().add(acc, t.top().mul(t.embed(c), b))
                });
            assert_eq!(back, x);
        }
    }

    #[test]
    fn norms() {
        let t = make_tower(2, 2).unwrap();
        let w = t.top().primitive();
        assert_eq!(t.norm(w), t.base().one());
        let t = make_tower(2, 3).unwrap();
        assert!(t
            .top()
            .nonzero_elements()
            .all(|x| t.norm(x) == t.base().one()));
        let t = make_tower(3, 2).unwrap();
        let mut fibers = std::collections::BTreeMap::new();
        for x in t.top().nonzero_elements() {
            *fibers.entry(t.norm(x)).or_insert(0) += 1;
        }
        assert_eq!(fibers.len(), 2);
        assert!(fibers.values().all(|&c| c == 4));
    }

    #[test]
    fn partial_norm_examples() {
        let t = make_tower(2, 3).unwrap();
        let k = t.top();
        let sigma = GaloisGenerator::new(&t, 1).unwrap();
        // w is a root of X^3 + X + 1, so w * w^2 = w + 1.
        let w = k
            .nonzero_elements()
            .find(|&z| k.add(k.add(k.pow(z, 3), z), k.one()).is_zero())
            .unwrap();
        assert_eq!(t.partial_norm(&sigma, 2, w), k.add(w, k.one()));
        assert_eq!(t.partial_norm(&sigma, 1, w), w);
        for x in k.elements() {
            assert_eq!(t.partial_norm(&sigma, 3, x), t.embed(t.norm(x)));
        }
        assert_eq!(t.partial_norm_image(&sigma, 2).unwrap().len(), 7);
        let t4 = make_tower(2, 2).unwrap();
        let s4 = GaloisGenerator::new(&t4, 1).unwrap();
        assert_eq!(
            t4.partial_norm_image(&s4, 2).unwrap().elements(),
            vec![t4.top().one()]
        );
    }

    #[test]
    fn roots_of_unity() {
        let f4 = make_field(2, 2).unwrap();
        let z = primitive_root_of_unity(&f4, 3).unwrap();
        assert_eq!(f4.mul_order(z), Some(3));
        assert_eq!(z, f4.primitive());
        assert_eq!(primitive_root_of_unity(&make_field(2, 1).unwrap(), 3), None);
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(primitive_root_of_unity(&f7, 3), Some(f7.from_prime(2)));
    }

    #[test]
    fn construction_is_deterministic() {
        let a = make_field(3, 3).unwrap();
        let b = make_field(3, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.primitive(), b.primitive());
        assert!(a.elements().all(|x| a.log(x) == b.log(x)));
    }
}
