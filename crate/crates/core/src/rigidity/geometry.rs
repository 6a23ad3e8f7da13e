use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice;

use super::vectorset::{prec, sole_in, VectorSet};

/// The double precedence test on a planar triple against its weighted copy.
///
/// `S1 = {±u_i, ±u_i ± u_j : i < j, u_i·u_j ≠ 0}` and
/// `S2 = {±u_i, ±α_i u_i ± α_j u_j : i < j, u_i·u_j ≠ 0}` with `α_1 = 1`.
/// Returns whether `sole(S1) ≺ S2` and `sole(S2) ≺ S1` both hold. Only equal
/// weights should pass.
pub fn lemma_geometry_check(u: [&[i64]; 3], alpha2: Rational64, alpha3: Rational64) -> Result<bool> {
    for (i, ui) in u.iter().enumerate() {
        if ui.len() != 2 || lattice::is_zero(ui) {
            return Err(Error::Precondition(format!("u{} must be a nonzero planar vector", i + 1)));
        }
        for uj in &u[i + 1..] {
            if lattice::is_parallel(ui, uj) {
                return Err(Error::Precondition(format!("{ui:?} and {uj:?} are parallel")));
            }
        }
    }
    if alpha2 <= Rational64::zero() || alpha3 <= Rational64::zero() {
        return Err(Error::Precondition("weights must be positive".into()));
    }
    let us: Vec<Vec<i64>> = u.iter().map(|x| x.to_vec()).collect();
    let s1 = super::vectorset::pair_set(&us);
    let sole1 = sole_in(&s1, &us);

    // S2 scaled by the common denominator of the weights so it stays integral.
    let alphas = [Rational64::from_integer(1), alpha2, alpha3];
    let d = lattice::common_denominator(&alphas);
    let scaled: Vec<Vec<i64>> = us
        .iter()
        .zip(alphas)
        .map(|(ui, a)| {
            let f = (a * Rational64::from_integer(d)).to_integer();
            ui.iter().map(|x| x * f).collect()
        })
        .collect();
    let mut s2 = VectorSet::new();
    for ui in &us {
        s2.insert_pm(&ui.iter().map(|x| x * d).collect::<Vec<_>>());
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            if lattice::dot_i(&us[i], &us[j]) != 0 {
                for beta in [1, -1] {
                    let w: Vec<i64> = scaled[i].iter().zip(&scaled[j]).map(|(a, b)| a + beta * b).collect();
                    s2.insert_pm(&w);
                }
            }
        }
    }
    let sole2 = sole_in(&s2, &scaled);
    Ok(prec(&sole1, &s2) && prec(&sole2, &s1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    #[test]
    fn equal_weights_pass() {
        assert!(lemma_geometry_check([&[3, 1], &[2, 2], &[-1, 4]], r(1, 1), r(1, 1)).unwrap());
        assert!(lemma_geometry_check([&[1, 0], &[1, 1], &[0, 1]], r(1, 1), r(1, 1)).unwrap());
    }

    #[test]
    fn unequal_weights_fail() {
        assert!(!lemma_geometry_check([&[3, 1], &[2, 2], &[-1, 4]], r(2, 1), r(1, 1)).unwrap());
        assert!(!lemma_geometry_check([&[1, 0], &[1, 1], &[0, 1]], r(3, 2), r(1, 1)).unwrap());
        assert!(!lemma_geometry_check([&[1, 0], &[1, 1], &[0, 1]], r(1, 1), r(1, 3)).unwrap());
    }

    #[test]
    fn hypothesis_violations() {
        assert!(lemma_geometry_check([&[1, 0], &[2, 0], &[0, 1]], r(1, 1), r(1, 1)).is_err());
        assert!(lemma_geometry_check([&[1, 0], &[1, 1], &[0, 1]], r(-1, 1), r(1, 1)).is_err());
    }
}
