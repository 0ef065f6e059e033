//! Workloads shared by the benchmarks.

use cremona_core::cremona::{make_linear_g, make_phi, CremonaMap};
use cremona_core::{Rational, TriHomPoly};

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Alternating quadratic involutions and linear maps, `len` factors.
pub fn word(len: usize) -> Vec<CremonaMap> {
    (0..len)
        .map(|i| {
            let k = i as i64;
            if i % 2 == 0 {
                make_phi(&r(k % 3), &r(1 + k % 2)).unwrap()
            } else {
                make_linear_g(r(k + 1), r(-k), r(2 * k - 1)).unwrap()
            }
        })
        .collect()
}

/// Two forms of degree `2d` sharing a factor of degree `d`.
pub fn gcd_pair(d: u32) -> (TriHomPoly, TriHomPoly) {
    let (x, y, z) = (TriHomPoly::x(), TriHomPoly::y(), TriHomPoly::z());
    let lin = |a: i64, b: i64, c: i64| &(&x.scale(&r(a)) + &y.scale(&r(b))) + &z.scale(&r(c));
    let mut common = TriHomPoly::constant(r(1));
    let mut f = TriHomPoly::constant(r(1));
    let mut g = TriHomPoly::constant(r(1));
    for i in 0..d as i64 {
        common = &common * &lin(1, i + 1, -i);
        f = &f * &lin(i + 2, -1, 3);
        g = &g * &lin(1, 2 * i + 1, i - 4);
    }
    (&common * &f, &common * &g)
}
