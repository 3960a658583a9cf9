use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use semifield_core::classify::{iso_criterion, IsoMap, IsoStatus};
use semifield_core::codes::build_rank_code;
use semifield_core::fields::generators;
use semifield_core::petit::Side;
use semifield_core::{
    make_field, make_tower, Elem, ExtensionTower, FiniteField, GaloisGenerator, PetitAlgebra,
    SkewPoly, SkewRing,
};

const FIELDS: [(u64, u32); 5] = [(2, 3), (2, 4), (3, 2), (5, 1), (7, 2)];

/// Product of coordinate vectors as polynomials mod the field modulus.
fn naive_mul(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let p = f.characteristic() as u64;
    let m = f.modulus();
    let e = m.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
        }
    }
    for top in (e..prod.len()).rev() {
        let c = prod[top];
        if c != 0 {
            for (k, &mk) in m.iter().enumerate() {
                let idx = top - e + k;
                prod[idx] = (prod[idx] + (p - c) * mk as u64) % p;
            }
        }
    }
    prod.truncate(e);
    prod.into_iter().map(|x| x as u32).collect()
}

fn elem(f: &FiniteField, i: u32) -> Elem {
    f.elements().nth((i % f.order()) as usize).unwrap()
}

/// `σ = Frob^j` computed by exponentiation.
fn sigma_pow(tower: &ExtensionTower, j: u32, i: usize, x: Elem) -> Elem {
    let q = tower.q() as u64;
    let n = tower.degree();
    let e = (j as u64 * i as u64) % n as u64;
    tower.top().pow(x, q.pow(e as u32))
}

/// `Σ a_i t^i · Σ b_j t^j = Σ a_i σ^i(b_j) t^{i+j}`.
fn naive_skew_mul(tower: &ExtensionTower, j: u32, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let k = tower.top();
    let mut out = vec![Elem::ZERO; (a.len() + b.len()).saturating_sub(1)];
    for (i, &x) in a.iter().enumerate() {
        for (l, &y) in b.iter().enumerate() {
            out[i + l] = k.add(out[i + l], k.mul(x, sigma_pow(tower, j, i, y)));
        }
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn poly(tower: &ExtensionTower, seeds: &[u32]) -> Vec<Elem> {
    seeds.iter().map(|&s| elem(tower.top(), s)).collect()
}

fn algebra(q: u64, n: u32, j: u32, m: usize, a: u32) -> PetitAlgebra {
    let tower = make_tower(q, n).unwrap();
    let gen = GaloisGenerator::new(&tower, j).unwrap();
    let a = tower.top().exp(a as u64);
    PetitAlgebra::cyclic(tower, gen, m, a).unwrap()
}

fn element_of(alg: &PetitAlgebra, seed: u64) -> semifield_core::AlgebraElement {
    alg.element_at(seed % alg.order() as u64)
}

proptest! {
    #[test]
    fn field_multiplication_is_polynomial_arithmetic(fi in 0usize..5, x in any::<u32>(), y in any::<u32>()) {
        let (p, e) = FIELDS[fi];
        let f = make_field(p, e).unwrap();
        let (a, b) = (elem(&f, x), elem(&f, y));
        let expect = naive_mul(&f, &f.coords(a), &f.coords(b));
        prop_assert_eq!(f.coords(f.mul(a, b)), expect);
    }

    #[test]
    fn field_axioms(fi in 0usize..5, x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let (p, e) = FIELDS[fi];
        let f = make_field(p, e).unwrap();
        let (a, b, c) = (elem(&f, x), elem(&f, y), elem(&f, z));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a)), f.one());
            prop_assert_eq!(f.div(f.mul(a, b), a), b);
        }
        prop_assert_eq!(f.pow(a, f.order() as u64), a);
    }

    #[test]
    fn skew_product_is_twisted_convolution(
        j in 1u32..3,
        a in prop::collection::vec(any::<u32>(), 0..5),
        b in prop::collection::vec(any::<u32>(), 0..5),
    ) {
        let tower = make_tower(2, 3).unwrap();
        let ring = SkewRing::new(tower.clone(), GaloisGenerator::new(&tower, j).unwrap());
        let (pa, pb) = (poly(&tower, &a), poly(&tower, &b));
        let got = ring.mul(&ring.poly(pa.clone()), &ring.poly(pb.clone())).unwrap();
        prop_assert_eq!(got.coeffs().to_vec(), naive_skew_mul(&tower, j, &pa, &pb));
    }

    #[test]
    fn right_division_contract(
        g in prop::collection::vec(any::<u32>(), 0..8),
        f in prop::collection::vec(any::<u32>(), 1..5),
        lead in 1u32..9,
    ) {
        let tower = make_tower(3, 2).unwrap();
        let ring = SkewRing::new(tower.clone(), GaloisGenerator::new(&tower, 1).unwrap());
        let mut fc = poly(&tower, &f);
        fc.push(tower.top().exp(lead as u64));
        let (g, f) = (ring.poly(poly(&tower, &g)), ring.poly(fc));
        let (q, r) = ring.right_divmod(&g, &f).unwrap();
        prop_assert!(r.degree() < f.degree());
        let back = naive_skew_mul(&tower, 1, q.coeffs(), f.coeffs());
        let back = ring.add(&ring.poly(back), &r).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn right_multiplication_matrix(seed_x in any::<u64>(), seed_y in any::<u64>(), case in 0usize..3) {
        let alg = [algebra(2, 2, 1, 2, 1), algebra(2, 3, 2, 2, 3), algebra(3, 2, 1, 3, 2)][case].clone();
        let (x, y) = (element_of(&alg, seed_x), element_of(&alg, seed_y));
        let k = alg.tower().top();
        let yx = alg.mul(&y, &x).unwrap();
        let r = alg.right_mult_matrix_k(&x).unwrap();
        prop_assert_eq!(r.mul_vec(k, y.coeffs()), yx.coeffs().to_vec());
        let base = alg.tower().base();
        let rf = alg.mult_matrix_f(&x, Side::Right).unwrap();
        prop_assert_eq!(rf.mul_vec(base, &alg.f_coords(&y)), alg.f_coords(&yx));
        let lf = alg.mult_matrix_f(&y, Side::Left).unwrap();
        prop_assert_eq!(lf.mul_vec(base, &alg.f_coords(&x)), alg.f_coords(&yx));
    }

    #[test]
    fn product_is_remainder_of_ring_product(seed_x in any::<u64>(), seed_y in any::<u64>()) {
        let alg = algebra(2, 3, 1, 3, 1);
        let (x, y) = (element_of(&alg, seed_x), element_of(&alg, seed_y));
        let ring = alg.ring();
        let full = naive_skew_mul(alg.tower(), 1, x.coeffs(), y.coeffs());
        let rem = ring.rem(&ring.poly(full), alg.modulus()).unwrap();
        prop_assert_eq!(alg.to_poly(&alg.mul(&x, &y).unwrap()), rem);
    }

    #[test]
    fn semifields_have_no_zero_divisors(seed_x in any::<u64>(), seed_y in any::<u64>(), case in 0usize..2) {
        let alg = [algebra(2, 2, 1, 2, 1), algebra(2, 3, 1, 3, 1)][case].clone();
        prop_assert!(alg.is_division().unwrap());
        let (x, y) = (element_of(&alg, seed_x), element_of(&alg, seed_y));
        if !x.is_zero() && !y.is_zero() {
            prop_assert!(!alg.mul(&x, &y).unwrap().is_zero());
        }
    }

    #[test]
    fn rank_codes_are_additive(i in any::<u64>(), l in any::<u64>()) {
        let code = build_rank_code(&algebra(2, 3, 1, 3, 1)).unwrap();
        let size = code.cardinality() as u64;
        let (i, l) = (i % size, l % size);
        let k = code.field();
        let sum = code.codeword(i).add(k, &code.codeword(l));
        prop_assert_eq!(sum, code.codeword(i ^ l));
        if i != l {
            prop_assert!(code.codeword(i).add(k, &code.codeword(l)).rank(k) >= 3);
        }
    }
}

#[test]
fn criterion_witnesses_give_isomorphisms() {
    for (q, n, m) in [(2u64, 2u32, 2usize), (2, 3, 3), (3, 2, 2)] {
        let tower: Arc<ExtensionTower> = make_tower(q, n).unwrap();
        for gen in generators(&tower) {
            let outside = tower.outside_base();
            for &a in outside.iter().take(4) {
                for &b in &outside {
                    let sa = PetitAlgebra::cyclic(tower.clone(), gen, m, a).unwrap();
                    let sb = PetitAlgebra::cyclic(tower.clone(), gen, m, b).unwrap();
                    let v = iso_criterion(&sa, &sb).unwrap();
                    if v.status != IsoStatus::Isomorphic {
                        continue;
                    }
                    let w = v.witness.unwrap();
                    let map = IsoMap {
                        tau: w.tau,
                        image_of_t: sb.monomial(w.k, 1),
                    };
                    let mut images = BTreeSet::new();
                    for x in 0..sa.order() as u64 {
                        let x = sa.element_at(x);
                        let hx = map.apply(&sa, &sb, &x).unwrap();
                        images.insert(hx.coeffs().to_vec());
                        for y in (0..sa.order() as u64).step_by(3) {
                            let y = sa.element_at(y);
                            let lhs = map.apply(&sa, &sb, &sa.mul(&x, &y).unwrap()).unwrap();
                            let rhs = sb.mul(&hx, &map.apply(&sa, &sb, &y).unwrap()).unwrap();
                            assert_eq!(lhs, rhs, "witness {w:?} for a={a:?}, b={b:?}");
                        }
                    }
                    assert_eq!(images.len() as u128, sa.order());
                }
            }
        }
    }
}

#[test]
fn zero_divisor_from_factorization() {
    let alg = algebra(2, 3, 1, 2, 0);
    let ring = alg.ring();
    let k = alg.tower().top();
    let g: SkewPoly = ring.poly(vec![k.one(), k.one()]);
    let (q, r) = ring.right_divmod(alg.modulus(), &g).unwrap();
    assert!(r.is_zero());
    let zq = alg.from_poly(&q).unwrap();
    let zg = alg.from_poly(&g).unwrap();
    assert!(alg.mul(&zq, &zg).unwrap().is_zero());
    assert!(!alg.is_division().unwrap());
}
