//! Sub-Pfaffians over index subsets, the forced sign pattern on the
//! positive region, membership checks, and spinor coordinates.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{rat, Rat};
use crate::positivity::SkewMatrix;

/// Pfaffian of the principal submatrix on the 1-based index set `subset`:
/// 1 on the empty set, 0 for odd cardinality.
pub fn pf_sub(a: &SkewMatrix, subset: &[usize]) -> Result<Rat> {
    if subset.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::IndexRange("subset must be strictly increasing".into()));
    }
    if subset.iter().any(|&i| i == 0 || i > a.rank()) {
        return Err(Error::IndexRange(format!("subset not within [{}]", a.rank())));
    }
    if subset.len() % 2 == 1 {
        return Ok(Rat::zero());
    }
    if subset.is_empty() {
        return Ok(rat(1));
    }
    a.matrix().submatrix(subset, subset)?.pfaffian()
}

/// The sign (-1)^(sum(I) - C(|I|+1, 2)); equals the sign of the shuffle
/// permutation listing I then its complement.
pub fn subset_sign(subset: &[usize], _n: usize) -> Result<i64> {
    if subset.len() % 2 == 1 {
        return Err(Error::IndexRange("subset must have even cardinality".into()));
    }
    let sum: usize = subset.iter().sum();
    let k = subset.len();
    let exponent = sum as i64 - (k * (k + 1) / 2) as i64;
    Ok(if exponent.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Even-size subsets of [n] ordered by size then lexicographically.
pub fn even_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|bits| (1..=n).filter(|&i| bits >> (i - 1) & 1 == 1).collect())
        .filter(|s: &Vec<usize>| s.len() % 2 == 0)
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Result of checking the Pfaffian sign pattern.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignPatternReport {
    /// sgn(I) Pf_I > 0 for every even I.
    pub strict: bool,
    /// sgn(I) Pf_I >= 0 for every even I.
    pub nonnegative: bool,
    /// First even subset (by size, then lexicographically) whose signed
    /// Pfaffian is strictly negative.
    pub witness: Option<Vec<usize>>,
}

/// Checks sgn(I) Pf_I(A) against the pattern forced on the positive region.
pub fn check_sign_pattern(a: &SkewMatrix) -> Result<SignPatternReport> {
    let n = a.rank();
    let mut strict = true;
    let mut nonnegative = true;
    let mut witness = None;
    for subset in even_subsets(n) {
        let signed = rat(subset_sign(&subset, n)?) * pf_sub(a, &subset)?;
        if signed.is_zero() {
            strict = false;
        } else if signed < Rat::zero() {
            strict = false;
            nonnegative = false;
            if witness.is_none() {
                witness = Some(subset);
            }
        }
    }
    Ok(SignPatternReport {
        strict,
        nonnegative,
        witness,
    })
}

/// All sub-Pfaffians of A, keyed by even subsets in (size, lex) order.
#[derive(Clone, PartialEq, Debug)]
pub struct PfaffianVector {
    pub n: usize,
    pub entries: Vec<(Vec<usize>, Rat)>,
}

impl PfaffianVector {
    pub fn of(a: &SkewMatrix) -> Result<PfaffianVector> {
        let n = a.rank();
        let mut entries = Vec::new();
        for subset in even_subsets(n) {
            let pf = pf_sub(a, &subset)?;
            entries.push((subset, pf));
        }
        Ok(PfaffianVector { n, entries })
    }

    pub fn get(&self, subset: &[usize]) -> Option<&Rat> {
        self.entries
            .iter()
            .find(|(s, _)| s.as_slice() == subset)
            .map(|(_, v)| v)
    }
}

/// Spinor coordinates of the chart point [Id | A]: the coordinate on the
/// basis vector indexed by the complement of I is
/// sgn(I) 2^(|I|/2) Pf_I(A).
pub fn spinor_coords(a: &SkewMatrix) -> Result<PfaffianVector> {
    let n = a.rank();
    let mut entries = Vec::new();
    for subset in even_subsets(n) {
        let pf = pf_sub(a, &subset)?;
        let scale = rat(1i64 << (subset.len() / 2));
        let coord = rat(subset_sign(&subset, n)?) * scale * pf;
        entries.push((subset, coord));
    }
    Ok(PfaffianVector { n, entries })
}

/// The signed conjugation mapping the sign-patterned region to matrices
/// with literally positive Pfaffians: entry (i,j) picks up (-1)^(i+j+1), so
/// that Pf_I of the image equals sgn(I) Pf_I of the input for every even I.
/// Helper only; no verdict depends on it.
pub fn alternate_conjugate(a: &SkewMatrix) -> SkewMatrix {
    let n = a.rank();
    let mut rows = vec![vec![Rat::zero(); n]; n];
    for i in 1..=n {
        for j in 1..=n {
            let v = a.entry(i, j).clone();
            rows[i - 1][j - 1] = if (i + j) % 2 == 1 { v } else { -v };
        }
    }
    SkewMatrix::from_rows(rows).expect("conjugation preserves skewness")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::group::marsh_rietsch;
    use crate::positivity::fixtures::{matrix_a1, matrix_a3};
    use crate::positivity::{is_totally_nonnegative, Verdict};
    use crate::rng::SplitMix64;

    fn random_skew(n: usize, rng: &mut SplitMix64) -> SkewMatrix {
        let mut rows = vec![vec![rat(0); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = rng.rat_small();
                rows[i][j] = v.clone();
                rows[j][i] = -v;
            }
        }
        SkewMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn pf_sub_conventions() {
        let a1 = matrix_a1();
        assert_eq!(pf_sub(&a1, &[]).unwrap(), rat(1));
        assert_eq!(pf_sub(&a1, &[2]).unwrap(), rat(0));
        assert_eq!(pf_sub(&a1, &[1, 2, 3]).unwrap(), rat(0));
        assert_eq!(pf_sub(&a1, &[3, 4]).unwrap(), rat(-2));
        assert!(pf_sub(&a1, &[4, 3]).is_err());
        assert!(pf_sub(&a1, &[0, 1]).is_err());
    }

    #[test]
    fn pf_sub_squares_to_principal_minor() {
        let mut rng = SplitMix64::new(12);
        for n in 2..=7 {
            let a = random_skew(n, &mut rng);
            for subset in even_subsets(n) {
                let pf = pf_sub(&a, &subset).unwrap();
                let det = if subset.is_empty() {
                    rat(1)
                } else {
                    a.matrix().minor(&subset, &subset).unwrap()
                };
                assert_eq!(&pf * &pf, det, "n={n} I={subset:?}");
            }
        }
    }

    #[test]
    fn pf_sub_first_row_recursion_consistency() {
        let mut rng = SplitMix64::new(13);
        for n in [4usize, 6] {
            let a = random_skew(n, &mut rng);
            for subset in even_subsets(n) {
                if subset.is_empty() {
                    continue;
                }
                let first = subset[0];
                let mut acc = rat(0);
                for (pos, &j) in subset.iter().enumerate().skip(1) {
                    let rest: Vec<usize> = subset
                        .iter()
                        .copied()
                        .filter(|&v| v != first && v != j)
                        .collect();
                    let term = a.entry(first, j) * &pf_sub(&a, &rest).unwrap();
                    if (pos + 1) % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                assert_eq!(acc, pf_sub(&a, &subset).unwrap());
            }
        }
    }

    #[test]
    fn subset_sign_matches_shuffle_parity() {
        // Independent route: inversion parity of the word I then [n] \ I.
        for n in 1..=10 {
            for subset in even_subsets(n) {
                let mut word: Vec<usize> = subset.clone();
                word.extend((1..=n).filter(|v| !subset.contains(v)));
                let mut inversions = 0usize;
                for i in 0..n {
                    for j in i + 1..n {
                        if word[i] > word[j] {
                            inversions += 1;
                        }
                    }
                }
                let parity = if inversions % 2 == 0 { 1 } else { -1 };
                assert_eq!(subset_sign(&subset, n).unwrap(), parity, "n={n} I={subset:?}");
            }
        }
        assert_eq!(subset_sign(&[], 4).unwrap(), 1);
        assert_eq!(subset_sign(&[2, 4], 4).unwrap(), -1);
        assert_eq!(subset_sign(&[1, 2], 7).unwrap(), 1);
        assert!(subset_sign(&[2], 4).is_err());
    }

    #[test]
    fn sign_pattern_on_positive_samples() {
        let mut rng = SplitMix64::new(14);
        for n in 3..=6 {
            for _ in 0..4 {
                let count = n * (n - 1) / 2;
                let t: Vec<Rat> = (0..count).map(|_| rng.rat_positive()).collect();
                let a = marsh_rietsch(n, &t).unwrap().chart().unwrap();
                let report = check_sign_pattern(&a).unwrap();
                assert!(report.strict, "n={n}");
                // The conjugated matrix has literally positive Pfaffians.
                let conj = alternate_conjugate(&a);
                for subset in even_subsets(n) {
                    assert!(pf_sub(&conj, &subset).unwrap() > rat(0));
                }
            }
        }
    }

    #[test]
    fn sign_pattern_witnesses() {
        let report = check_sign_pattern(&matrix_a1()).unwrap();
        assert!(!report.strict);
        assert!(!report.nonnegative);
        assert_eq!(report.witness, Some(vec![3, 4]));

        let report = check_sign_pattern(&matrix_a3()).unwrap();
        assert!(report.nonnegative);
        assert_eq!(report.witness, None);
    }

    #[test]
    fn pfaffian_nonnegative_strictly_contains_totally_nonnegative() {
        // Fixed regression pair: A3 passes the sign pattern weakly but is
        // not totally nonnegative.
        let a3 = matrix_a3();
        assert!(check_sign_pattern(&a3).unwrap().nonnegative);
        assert_eq!(
            is_totally_nonnegative(&a3).unwrap().verdict,
            Verdict::NotNonnegative
        );
    }

    #[test]
    fn spinor_coordinate_cases() {
        let zero = SkewMatrix::zero(3);
        let coords = spinor_coords(&zero).unwrap();
        for (subset, value) in &coords.entries {
            if subset.is_empty() {
                assert_eq!(value, &rat(1));
            } else {
                assert_eq!(value, &rat(0));
            }
        }

        let a = ratio(5, 3);
        let m = SkewMatrix::from_rows(vec![vec![rat(0), a.clone()], vec![-a.clone(), rat(0)]])
            .unwrap();
        let coords = spinor_coords(&m).unwrap();
        assert_eq!(coords.get(&[]), Some(&rat(1)));
        assert_eq!(coords.get(&[1, 2]), Some(&(rat(2) * a)));

        // Total positivity forces every Pfaffian to the pattern sign, so the
        // sign-scaled spinor coordinates are all strictly positive.
        let mut rng = SplitMix64::new(15);
        let t: Vec<Rat> = (0..6).map(|_| rng.rat_positive()).collect();
        let pos = marsh_rietsch(4, &t).unwrap().chart().unwrap();
        let coords = spinor_coords(&pos).unwrap();
        for (subset, value) in &coords.entries {
            assert!(value > &rat(0), "I={subset:?}");
        }
    }
}
