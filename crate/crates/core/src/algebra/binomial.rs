use super::{int, BigRational};

/// Generalized binomial coefficient `p (p−1) ··· (p−j+1) / j!` for rational `p`.
pub fn half_binomial(p: &BigRational, j: usize) -> BigRational {
    let mut acc = int(1);
    for i in 0..j {
        acc = acc * (p - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        assert_eq!(half_binomial(&rat(1, 2), 1), rat(1, 2));
        assert_eq!(half_binomial(&rat(-7, 3), 0), int(1));
        // (-2)(-3)/2
        assert_eq!(half_binomial(&int(-2), 2), int(3));
        // (1/2)(-1/2)/2
        assert_eq!(half_binomial(&rat(1, 2), 2), rat(-1, 8));
    }

    fn pascal(n: usize, k: usize) -> u128 {
        let mut row = vec![1u128];
        for _ in 0..n {
            let mut next = vec![1u128; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        row[k]
    }

    proptest! {
        #[test]
        fn integer_argument_matches_pascal(n in 0usize..40, k in 0usize..40) {
            prop_assume!(k <= n);
            let expect = BigRational::from_integer(pascal(n, k).into());
            prop_assert_eq!(half_binomial(&int(n as i64), k), expect);
        }
    }
}
