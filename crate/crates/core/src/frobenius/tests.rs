use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::arith::{int, ratio};
use crate::polyring::parse;

fn fp(n: usize, p: u64) -> Ring {
    Ring::prime(n, p).unwrap()
}

fn poly(text: &str, n: usize, p: u64) -> Polynomial {
    parse(text, fp(n, p)).unwrap()
}

fn b() -> Budget {
    Budget::default()
}

fn maximal(n: usize, p: u64) -> Vec<Polynomial> {
    (0..n).map(|i| Polynomial::var(fp(n, p), i)).collect()
}

/// ν by linear scan over i, straight from the definition.
fn nu_oracle(gens: &[Polynomial], e: u32) -> u64 {
    let ring = gens[0].ring();
    let q = ring.characteristic().pow(e);
    let mut products = vec![Polynomial::one(ring)];
    let mut best = 0;
    for i in 1.. {
        let mut next = Vec::new();
        for f in &products {
            for g in gens {
                next.push(f.mul(g).unwrap());
            }
        }
        products = next;
        if products.iter().all(|f| in_frobenius_power(f, e).unwrap()) {
            return best;
        }
        best = i;
        assert!(i <= ring.nvars() as u64 * q, "runaway");
    }
    unreachable!()
}

#[test]
fn frobenius_power_membership() {
    assert!(in_frobenius_power(&poly("x^7", 1, 7), 1).unwrap());
    let g = poly("x*y*z", 3, 5).pow(4, &b()).unwrap();
    assert!(!in_frobenius_power(&g, 1).unwrap());
    let f = poly("x^3+y^3+z^3", 3, 7);
    assert!(!in_frobenius_power(&f.pow(6, &b()).unwrap(), 1).unwrap());
    assert!(in_frobenius_power(&Polynomial::zero(fp(2, 3)), 1).unwrap());
}

#[test]
fn nu_of_maximal_ideal() {
    for n in 1..=3 {
        for p in [2u64, 3, 5] {
            for e in 1..=2 {
                let q = p.pow(e);
                assert_eq!(nu(&maximal(n, p), e, &b()).unwrap(), (q - 1) * n as u64);
            }
        }
    }
}

#[test]
fn nu_of_cusp() {
    assert_eq!(nu(&[poly("x^2+y^3", 2, 7)], 1, &b()).unwrap(), 5);
    assert_eq!(nu(&[poly("x^2+y^3", 2, 5)], 1, &b()).unwrap(), 3);
}

#[test]
fn nu_matches_definition_scan() {
    for (text, p) in [("x^2+y^3", 5u64), ("x^2*y+y^4", 3), ("x*y", 2), ("x^3+x*y^2", 5)] {
        let f = poly(text, 2, p);
        for e in 1..=2 {
            assert_eq!(nu(&[f.clone()], e, &b()).unwrap(), nu_oracle(&[f.clone()], e), "{text} p={p} e={e}");
        }
    }
    let gens = [poly("x^2", 2, 3), poly("x*y+y^3", 2, 3)];
    for e in 1..=2 {
        assert_eq!(nu(&gens, e, &b()).unwrap(), nu_oracle(&gens, e));
    }
}

#[test]
fn diagonal_shortcut_matches_expansion() {
    let b = b();
    for (exps, p) in [(vec![2u64, 3], 5u64), (vec![2, 3], 7), (vec![3, 3, 3], 5), (vec![2, 2], 3), (vec![1, 4], 3), (vec![5, 2, 3], 2)] {
        let n = exps.len();
        let ring = fp(n, p);
        let mut f = Polynomial::zero(ring);
        for (i, &a) in exps.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = a;
            f = f.add(&Polynomial::monomial(ring, &e).unwrap().scale(&Coefficient::Residue(1 + i as u64 % (p - 1).max(1)))).unwrap();
        }
        for e in 1..=2 {
            let q = p.pow(e);
            let generic = {
                // bypass the shortcut: binary search on truncated powers
                let keep = |m: &Monomial| m.exponents().iter().all(|&x| x < q);
                let mut lo = 0;
                let mut hi = n as u64 * (q - 1);
                while lo < hi {
                    let mid = lo + (hi - lo + 1) / 2;
                    if f.pow_filtered(mid, &keep, &b).unwrap().is_zero() { hi = mid - 1 } else { lo = mid }
                }
                lo
            };
            assert_eq!(nu(&[f.clone()], e, &b).unwrap(), generic, "{exps:?} p={p} e={e}");
        }
    }
}

#[test]
fn nu_preconditions() {
    assert!(nu(&[poly("1+x", 1, 5)], 1, &b()).is_err());
    assert_eq!(nu(&[], 1, &b()), Err(Error::ZeroIdeal));
    assert!(nu(&[parse("x", Ring::rational(1)).unwrap()], 1, &b()).is_err());
    let tight = Budget {
        max_prime_power: 100,
        ..Budget::default()
    };
    assert!(matches!(nu(&[poly("x", 1, 7)], 3, &tight), Err(Error::Budget { .. })));
}

#[test]
fn cusp_enclosures() {
    let ctx = FrobeniusContext::new(7, 2, 2).unwrap();
    let (r, seq) = fpt_enclosure(&[poly("x^2+y^3", 2, 7)], &ctx).unwrap();
    assert!(r.contains(&ratio(5, 6)), "{r}");
    assert!(!r.certified);
    assert_eq!(seq.get(1), Some(5));

    let ctx = FrobeniusContext::new(5, 2, 3).unwrap();
    let (r, _) = fpt_enclosure(&[poly("x^2+y^3", 2, 5)], &ctx).unwrap();
    assert!(r.contains(&ratio(4, 5)), "{r}");
    assert!(r.width() <= ratio(1, 125));
}

#[test]
fn maximal_ideal_is_exact() {
    for n in 1..=3 {
        let ctx = FrobeniusContext::new(3, n, 2).unwrap();
        let (r, _) = fpt_enclosure(&maximal(n, 3), &ctx).unwrap();
        assert_eq!(r.exact_value(), Some(&int(n as i64)));
        assert!(r.certified);
    }
}

#[test]
fn monomial_fpt_is_prime_independent() {
    let a = MonomialIdeal::parse("x^2, y^3", None).unwrap();
    assert_eq!(fpt_monomial(&a).unwrap(), ratio(5, 6));
    assert_eq!(fpt_monomial(&MonomialIdeal::maximal(3).unwrap()).unwrap(), int(3));
    // cross-check against ν for small p, e
    for p in [2u64, 3, 5] {
        let gens = [poly("x^2", 2, p), poly("y^3", 2, p)];
        let ctx = FrobeniusContext::new(p, 2, 2).unwrap();
        let seq = nu_sequence(&gens, &ctx).unwrap();
        for (e, v) in seq.values.iter().enumerate() {
            let q = p.pow(e as u32 + 1) as i64;
            assert!(ratio(*v as i64, q) <= ratio(5, 6));
            assert!(ratio(*v as i64 + 2, q) >= ratio(5, 6));
        }
    }
}

/// Coefficient of (xyz)^{p-1} in f^{p-1} by plain repeated multiplication.
fn hasse_oracle(f: &Polynomial) -> bool {
    let p = f.ring().characteristic();
    let mut acc = Polynomial::one(f.ring());
    for _ in 0..p - 1 {
        acc = acc.mul(f).unwrap();
    }
    acc.coefficient(&Monomial::new(vec![p - 1; 3])) != Coefficient::Residue(0)
}

#[test]
fn fermat_cubic_ordinarity() {
    for (p, expected) in [(7u64, true), (5, false), (13, true)] {
        let f = poly("x^3+y^3+z^3", 3, p);
        assert_eq!(hasse_oracle(&f), expected);
        assert_eq!(is_ordinary_cubic(&f).unwrap(), expected);
    }
    assert_eq!(fpt_cubic_cone(&poly("x^3+y^3+z^3", 3, 7)).unwrap(), int(1));
    assert_eq!(fpt_cubic_cone(&poly("x^3+y^3+z^3", 3, 5)).unwrap(), ratio(4, 5));
}

#[test]
fn cubic_catalogue() {
    // y^2 z = x^3 + x z^2 is supersingular iff p = 3 mod 4;
    // y^2 z = x^3 + z^3 is supersingular iff p = 2 mod 3.
    for p in (5u64..60).filter(|&p| crate::arith::is_prime(p)) {
        let f = poly("y^2*z - x^3 - x*z^2", 3, p);
        assert_eq!(is_ordinary_cubic(&f).unwrap(), p % 4 == 1, "p={p}");
        let g = poly("y^2*z - x^3 - z^3", 3, p);
        assert_eq!(is_ordinary_cubic(&g).unwrap(), p % 3 == 1, "p={p}");
    }
}

#[test]
fn ordinary_iff_nu_one_is_p_minus_one() {
    for p in [5u64, 7, 11, 13] {
        let f = poly("x^3+y^3+z^3", 3, p);
        let nu1 = nu(&[f.clone()], 1, &b()).unwrap();
        assert_eq!(nu1 == p - 1, fpt_cubic_cone(&f).unwrap() == int(1), "p={p}");
    }
}

#[test]
fn cubic_preconditions() {
    assert!(is_ordinary_cubic(&poly("x^3+y^2", 3, 7)).is_err());
    assert!(is_ordinary_cubic(&poly("x^3+y^3", 2, 7)).is_err());
}

fn arb_gen(p: u64) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u64..=4, 0u64..=4), 1u64..p), 1..=3).prop_map(move |terms| {
        let ring = fp(2, p);
        let mut f = Polynomial::zero(ring);
        for ((a, b), c) in terms {
            let (a, b) = if a + b == 0 { (1, 0) } else { (a, b) };
            let t = Polynomial::monomial(ring, &[a, b])
                .unwrap()
                .scale(&Coefficient::Residue(c));
            f = f.add(&t).unwrap();
        }
        if f.is_zero() {
            Polynomial::var(ring, 0)
        } else {
            f
        }
    })
}

fn arb_case() -> impl Strategy<Value = (u64, Vec<Polynomial>, Vec<Polynomial>)> {
    prop::sample::select(vec![2u64, 3, 5]).prop_flat_map(|p| {
        (
            Just(p),
            prop::collection::vec(arb_gen(p), 1..=2),
            prop::collection::vec(arb_gen(p), 1..=2),
        )
    })
}

fn products(gens: &[Polynomial], r: u32) -> Vec<Polynomial> {
    let mut acc = vec![Polynomial::one(gens[0].ring())];
    for _ in 0..r {
        acc = acc
            .iter()
            .flat_map(|f| gens.iter().map(move |g| f.mul(g).unwrap()))
            .collect();
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nu_grows_at_least_by_p((p, a, _) in arb_case()) {
        let ctx = FrobeniusContext::new(p, 2, 3).unwrap();
        let seq = nu_sequence(&a, &ctx).unwrap();
        for w in seq.values.windows(2) {
            prop_assert!(w[1] >= p * w[0]);
        }
    }

    #[test]
    fn principal_upper_recursion_holds((p, a, _) in arb_case()) {
        // regression for the (ν(e)+1)/p^e bound: ν(e+1) <= p ν(e) + p - 1,
        // with ν(e+1) computed from the definition scan
        let f = [a[0].clone()];
        for e in 1..=2u32 {
            let lower = nu(&f, e, &b()).unwrap();
            let upper = if e == 1 { nu_oracle(&f, 2) } else { nu(&f, 3, &b()).unwrap() };
            prop_assert!(upper <= p * lower + p - 1);
        }
    }

    #[test]
    fn nu_is_monotone_under_inclusion((_p, a, extra) in arb_case()) {
        let mut bigger = a.clone();
        bigger.extend(extra);
        for e in 1..=2 {
            prop_assert!(nu(&a, e, &b()).unwrap() <= nu(&bigger, e, &b()).unwrap());
        }
    }

    #[test]
    fn nu_power_identity((_p, a, _) in arb_case(), r in 1u32..=3) {
        let ar = products(&a, r);
        let r = r as u64;
        for e in 1..=2 {
            let na = nu(&a, e, &b()).unwrap();
            let nar = nu(&ar, e, &b()).unwrap();
            prop_assert!(r * nar <= na);
            prop_assert!(na <= r * (nar + 1) - 1);
        }
    }

    #[test]
    fn nu_subadditive((_p, a, c) in arb_case()) {
        let mut sum = a.clone();
        sum.extend(c.iter().cloned());
        for e in 1..=2 {
            prop_assert!(nu(&sum, e, &b()).unwrap() <= nu(&a, e, &b()).unwrap() + nu(&c, e, &b()).unwrap() + 1);
        }
    }

    #[test]
    fn enclosure_respects_order_bounds((p, a, _) in arb_case()) {
        let ctx = FrobeniusContext::new(p, 2, 2).unwrap();
        let (r, _) = fpt_enclosure(&a, &ctx).unwrap();
        let ord = a.iter().filter_map(|g| g.order()).min().unwrap() as i64;
        prop_assert!(r.lo() >= &ratio(1, ord));
        prop_assert!(r.hi() <= &ratio(2, ord));
    }

    #[test]
    fn one_variable_principal((p, d, c) in (prop::sample::select(vec![2u64, 3, 5, 7]), 1u64..=9, 1u64..=4)) {
        // f = x^d (1 + c x) has order d
        let ring = fp(1, p);
        let x = Polynomial::var(ring, 0);
        let f = x.pow(d, &b()).unwrap().mul(&Polynomial::one(ring).add(&x.scale(&Coefficient::Residue(c % p))).unwrap()).unwrap();
        let ctx = FrobeniusContext::new(p, 1, 3).unwrap();
        let (r, seq) = fpt_enclosure(&[f], &ctx).unwrap();
        prop_assert_eq!(r.exact_value(), Some(&ratio(1, d as i64)));
        let mut q = 1i64;
        for v in &seq.values {
            q *= p as i64;
            prop_assert!(ratio(*v as i64, q) <= ratio(1, d as i64));
            prop_assert!(ratio(*v as i64 + 1, q) >= ratio(1, d as i64));
        }
    }
}
