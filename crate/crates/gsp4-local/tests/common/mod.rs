#![allow(dead_code)]

use gsp4_local::padic::{iota, ppow, u_elt, GSp4Elt, HElt, QMat, SchwartzFn};
use gsp4_local::symcore::{q, LaurentPoly, Mono, RatFunc, Rational, Sym};
use proptest::prelude::*;

pub fn rational(p: u64) -> impl Strategy<Value = Rational> {
    (-12i64..=12, 0i64..=2, prop::sample::select(vec![1i64, 5, 7]))
        .prop_map(move |(a, e, d)| &q(a) * &(ppow(p, -e) / q(d)))
}

pub fn unit_or_p(p: u64) -> impl Strategy<Value = Rational> {
    (1i64..=12, -1i64..=2).prop_map(move |(a, e)| {
        let a = if a % p as i64 == 0 { a + 1 } else { a };
        &q(a) * &ppow(p, e)
    })
}

pub fn primes() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

pub fn small_primes() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3])
}

pub fn gl2(p: u64) -> impl Strategy<Value = QMat> {
    (rational(p), rational(p), unit_or_p(p), unit_or_p(p)).prop_map(|(x, y, a, d)| {
        let n = QMat::from_rows(vec![vec![q(1), x], vec![q(0), q(1)]]);
        let nb = QMat::from_rows(vec![vec![q(1), q(0)], vec![y, q(1)]]);
        let t = QMat::diag(&[a, d]);
        &(&nb * &t) * &n
    })
}

/// Elements with entries of valuation at least -1, keeping Schwartz levels small.
pub fn gl2_mild(p: u64) -> impl Strategy<Value = QMat> {
    (-4i64..=4, -4i64..=4, 1i64..=4, 0i64..=1, 1i64..=4, -1i64..=0).prop_map(move |(x, y, a, ea, d, ed)| {
        let unit = |c: i64| if c % p as i64 == 0 { q(c + 1) } else { q(c) };
        let n = QMat::from_rows(vec![vec![q(1), q(x)], vec![q(0), q(1)]]);
        let nb = QMat::from_rows(vec![vec![q(1), q(0)], vec![q(y), q(1)]]);
        let t = QMat::diag(&[&unit(a) * &ppow(p, ea), &unit(d) * &ppow(p, ed)]);
        &(&nb * &t) * &n
    })
}

pub fn helt_mild(p: u64) -> impl Strategy<Value = HElt> {
    (gl2_mild(p), -4i64..=4, any::<bool>()).prop_map(move |(h1, x, flip)| {
        let det = h1.det();
        let n = QMat::from_rows(vec![vec![q(1), q(x)], vec![q(0), q(1)]]);
        let d = if flip {
            QMat::from_rows(vec![vec![q(0), det.clone()], vec![q(-1), q(0)]])
        } else {
            QMat::diag(&[q(1), det])
        };
        HElt::new(h1, &n * &d).unwrap()
    })
}

pub fn helt(p: u64) -> impl Strategy<Value = HElt> {
    (gl2(p), rational(p), rational(p), any::<bool>()).prop_map(|(h1, x, y, flip)| {
        let det = h1.det();
        let n = QMat::from_rows(vec![vec![q(1), x], vec![q(0), q(1)]]);
        let nb = QMat::from_rows(vec![vec![q(1), q(0)], vec![y, q(1)]]);
        let d = if flip {
            QMat::from_rows(vec![vec![q(0), det.clone()], vec![q(-1), q(0)]])
        } else {
            QMat::diag(&[q(1), det])
        };
        HElt::new(h1, &(&n * &d) * &nb).unwrap()
    })
}

pub fn gsp4(p: u64) -> impl Strategy<Value = GSp4Elt> {
    (helt(p), helt(p), rational(p), rational(p), rational(p)).prop_map(move |(a, b, u, v, w)| {
        let x = u_elt(1, &u, &v, &w);
        &(&iota(&a) * &x) * &iota(&b)
    })
}

pub fn laurent() -> impl Strategy<Value = LaurentPoly> {
    let vars = ["x", "y", Sym::ell().name()].map(String::from);
    prop::collection::vec((0usize..3, -2i32..=2, 0usize..3, -1i32..=2, -6i64..=6), 1..=3).prop_map(move |ts| {
        LaurentPoly::from_terms(ts.into_iter().map(|(i, e, j, f, c)| {
            (Mono::from_pairs([(Sym::new(&vars[i]), e), (Sym::new(&vars[j]), f)]), q(c))
        }))
    })
}

pub fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (laurent(), laurent()).prop_map(|(n, d)| {
        if d.is_zero() {
            RatFunc::from_poly(n)
        } else {
            RatFunc::new(n, d).unwrap()
        }
    })
}

pub fn schwartz(p: u64) -> impl Strategy<Value = SchwartzFn> {
    prop::collection::vec((-3i64..=3, -3i64..=3, 0i64..=3, 0i64..=1), 1..=3).prop_map(move |cs| {
        cs.into_iter().fold(SchwartzFn::zero(p), |acc, (a, b, n, s)| {
            let x0 = [&q(a) * &ppow(p, -s), &q(b) * &ppow(p, -s)];
            &acc + &SchwartzFn::ch_coset(p, x0, n.min(3 - s))
        })
    })
}

