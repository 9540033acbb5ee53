//! Exact rational helpers: heights, dyadic checks and canonical point choices.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Exact rational number used for every endpoint in the crate.
pub type Q = Ratio<i128>;

pub fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

pub fn int(n: i128) -> Q {
    Q::from_integer(n)
}

/// Height of a rational in lowest terms: `max(|p|, q)`.
pub fn height(x: &Q) -> u128 {
    let p = x.numer().unsigned_abs();
    let d = x.denom().unsigned_abs();
    p.max(d)
}

/// Whether the denominator of `x` (lowest terms) is a power of two.
pub fn is_dyadic(x: &Q) -> bool {
    let d = *x.denom();
    d > 0 && (d & (d - 1)) == 0
}

/// Exponent `k` of the reduced denominator `2^k` of a dyadic rational.
pub fn dyadic_exponent(x: &Q) -> Option<u32> {
    is_dyadic(x).then(|| x.denom().trailing_zeros())
}

/// All rationals of exactly height `h`, sorted by value.
pub fn rationals_of_height(h: u128) -> Vec<Q> {
    let h = h as i128;
    let mut out = Vec::new();
    if h == 0 {
        return out;
    }
    if h == 1 {
        return vec![int(-1), int(0), int(1)];
    }
    // numerator magnitude h with denominator < h coprime, or denominator h with |numerator| < h coprime
    for d in 1..h {
        if h.gcd(&d) == 1 {
            out.push(q(h, d));
            out.push(q(-h, d));
        }
    }
    for n in -(h - 1)..h {
        if n.gcd(&h) == 1 {
            out.push(q(n, h));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Rationals of height `<= n`, sorted by height then value.
pub fn rationals_up_to_height(n: u128) -> Vec<Q> {
    (1..=n).flat_map(rationals_of_height).collect()
}

/// Iterator over all rationals in the canonical order: height, then value.
pub fn rationals_in_height_order() -> impl Iterator<Item = Q> {
    (1u128..).flat_map(rationals_of_height)
}

/// Least-height rational strictly between `lo` and `hi` (ties by value).
pub fn least_height_between(lo: &Q, hi: &Q) -> Option<Q> {
    if lo >= hi {
        return None;
    }
    // the mediant-style bound: some rational with denominator d exists once 1/d < hi - lo
    let gap = hi - lo;
    let mut d: i128 = 1;
    while int(1) / int(d) >= gap {
        d *= 2;
    }
    let cap = (lo.abs().max(hi.abs()).ceil().to_integer() + 1) * d + d;
    for h in 1..=(cap as u128) {
        if let Some(x) = rationals_of_height(h).into_iter().find(|x| lo < x && x < hi) {
            return Some(x);
        }
    }
    None
}

/// The dyadic rational of least denominator strictly inside `(lo, hi)`; ties by absolute value, then value.
pub fn least_dyadic_between(lo: &Q, hi: &Q) -> Option<Q> {
    if lo >= hi {
        return None;
    }
    let mut denom: i128 = 1;
    loop {
        let d = int(denom);
        let first = (lo * d).floor().to_integer() + 1;
        let last = (hi * d).ceil().to_integer() - 1;
        if first <= last {
            let best = if first <= 0 && last >= 0 {
                0
            } else if first > 0 {
                first
            } else {
                last
            };
            return Some(q(best, denom));
        }
        denom *= 2;
    }
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn floor_int(x: &Q) -> i128 {
    x.floor().to_integer()
}

pub fn ceil_int(x: &Q) -> i128 {
    x.ceil().to_integer()
}

pub fn pow2(k: u32) -> Q {
    Q::from_integer(1i128 << k)
}

pub fn half() -> Q {
    q(1, 2)
}

pub fn zero() -> Q {
    Q::zero()
}

/// Render a rational as `p/q` or `p`.
pub fn show(x: &Q) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Render a dyadic rational as `a/2^k` (or an integer).
pub fn show_dyadic(x: &Q) -> String {
    match dyadic_exponent(x) {
        Some(0) | None => show(x),
        Some(k) => format!("{}/2^{}", x.numer(), k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heights_small() {
        assert_eq!(rationals_of_height(1), vec![int(-1), int(0), int(1)]);
        assert_eq!(
            rationals_of_height(2),
            vec![int(-2), q(-1, 2), q(1, 2), int(2)]
        );
        for x in rationals_up_to_height(6) {
            assert!(height(&x) <= 6);
        }
    }

    #[test]
    fn height_enumeration_is_complete() {
        // brute force: every p/q with |p|,q <= 5
        let mut brute: Vec<Q> = Vec::new();
        for d in 1..=5 {
            for n in -5..=5 {
                brute.push(q(n, d));
            }
        }
        brute.sort();
        brute.dedup();
        let mut ours = rationals_up_to_height(5);
        ours.sort();
        assert_eq!(ours, brute);
    }

    #[test]
    fn least_choices() {
        assert_eq!(least_dyadic_between(&int(1), &int(2)), Some(q(3, 2)));
        assert_eq!(least_dyadic_between(&int(-1), &int(2)), Some(int(0)));
        assert_eq!(least_height_between(&int(0), &int(1)), Some(q(1, 2)));
        assert_eq!(least_height_between(&q(1, 3), &q(1, 2)), Some(q(2, 5)));
        assert!(is_dyadic(&q(3, 8)));
        assert!(!is_dyadic(&q(1, 3)));
    }
}
