//! Correctly rounded floating-point summation.
//!
//! The running sum is kept as a list of non-overlapping partials (Shewchuk's
//! algorithm) and rounded once at the end, so the result does not depend on
//! the order of the summands.

use alloc::vec::Vec;


pub(crate) fn exact_sum(items: impl IntoIterator<Item = f64>) -> f64 {
    let mut partials: Vec<f64> = Vec::new();
    let mut naive = 0.0;
    for mut x in items {
        naive += x;
        let mut kept = 0;
        for j in 0..partials.len() {
            let mut y = partials[j];
            if x.abs() < y.abs() {
                core::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[kept] = lo;
                kept += 1;
            }
            x = hi;
        }
        partials.truncate(kept);
        partials.push(x);
    }
    if !naive.is_finite() {
        return naive;
    }
    round_partials(&partials)
}

fn round_partials(partials: &[f64]) -> f64 {
    let Some((&top, rest)) = partials.split_last() else {
        return 0.0;
    };
    let mut hi = top;
    let mut lo = 0.0;
    let mut n = rest.len();
    while n > 0 {
        let x = hi;
        n -= 1;
        let y = rest[n];
        hi = x + y;
        lo = y - (hi - x);
        if lo != 0.0 {
            break;
        }
    }
    // round half to even across the boundary between hi and the next partial
    if n > 0 && ((lo < 0.0 && rest[n - 1] < 0.0) || (lo > 0.0 && rest[n - 1] > 0.0)) {
        let y = lo * 2.0;
        let x = hi + y;
        if y == x - hi {
            hi = x;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cancels_exactly() {
        assert_eq!(exact_sum([1e100, 1.0, -1e100]), 1.0);
        assert_eq!(exact_sum([0.1; 10]), 1.0);
        assert_eq!(exact_sum([]), 0.0);
    }

    #[test]
    fn half_even_boundary() {
        // 1 + 2⁻⁵³ + 2⁻¹⁰⁶ rounds up, 1 + 2⁻⁵³ alone rounds to even
        let e = 2f64.powi(-53);
        assert_eq!(exact_sum([1.0, e]), 1.0);
        assert_eq!(exact_sum([1.0, e, e * e]), 1.0 + 2.0 * e);
    }

    proptest! {
        #[test]
        fn order_independent(mut v in proptest::collection::vec(-1e6f64..1e6, 0..40), seed in 0u64..1000) {
            let a = exact_sum(v.iter().copied());
            let n = v.len().max(1);
            v.rotate_left((seed as usize) % n);
            v.reverse();
            prop_assert_eq!(a, exact_sum(v.iter().copied()));
        }

        #[test]
        fn odd_under_negation(v in proptest::collection::vec(-1e6f64..1e6, 0..40)) {
            prop_assert_eq!(exact_sum(v.iter().copied()), -exact_sum(v.iter().map(|x| -x)));
        }
    }
}
