//! Homology of graded chain complexes over the integers.

use std::collections::BTreeMap;

use super::group::{Grading, GradedGroup};
use super::laurent::LaurentPoly;
use super::matrix::{smith_normal_form, IntegerMatrix};
use crate::error::{Error, Result};

/// Checks that `differential` is square over `gradings`, squares to zero and
/// has degree -1.
pub fn check_differential(gradings: &[Grading], differential: &IntegerMatrix) -> Result<()> {
    let n = gradings.len();
    if differential.rows() != n || differential.cols() != n {
        return Err(Error::Dimension(format!(
            "differential is {}x{} but there are {n} generators",
            differential.rows(),
            differential.cols()
        )));
    }
    for (r, c, _) in differential.nonzero_entries() {
        if gradings[r] + Grading::from_integer(1) != gradings[c] {
            return Err(Error::WrongDegree { row: r, col: c });
        }
    }
    let sq = differential.mul(differential)?;
    if let Some((row, col, _)) = sq.nonzero_entries().next() {
        return Err(Error::NotSquareZero { row, col });
    }
    Ok(())
}

/// Homology of the complex with generators in the given gradings.
///
/// Column `j` of `differential` is the boundary of generator `j`.
pub fn chain_homology(gradings: &[Grading], differential: &IntegerMatrix) -> Result<GradedGroup> {
    check_differential(gradings, differential)?;
    let mut by_grading: BTreeMap<Grading, Vec<usize>> = BTreeMap::new();
    for (i, d) in gradings.iter().enumerate() {
        by_grading.entry(*d).or_default().push(i);
    }
    let one = Grading::from_integer(1);
    let empty = Vec::new();

    let mut out = GradedGroup::zero();
    for (d, cells) in &by_grading {
        let below = by_grading.get(&(d - one)).unwrap_or(&empty);
        let above = by_grading.get(&(d + one)).unwrap_or(&empty);
        let outgoing = smith_normal_form(&differential.select(below, cells));
        let incoming = smith_normal_form(&differential.select(cells, above));
        let free = cells.len() - outgoing.rank() - incoming.rank();
        let torsion: Vec<u64> = incoming
            .invariant_factors()
            .into_iter()
            .map(|x| x.unsigned_abs())
            .filter(|&x| x > 1)
            .collect();
        out = out
            .direct_sum(&GradedGroup::free(*d, free as u64))
            .with_torsion(*d, &torsion);
    }
    Ok(out)
}

/// `sum_i chi(groups[i]) T^i`, torsion ignored.
pub fn euler_poly<'a, I>(groups: I) -> Result<LaurentPoly>
where
    I: IntoIterator<Item = (i64, &'a GradedGroup)>,
{
    let mut p = LaurentPoly::zero();
    for (i, g) in groups {
        p.add_term(g.euler_characteristic()?, i);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::grading;

    fn gr(v: &[i64]) -> Vec<Grading> {
        v.iter().map(|&x| grading(x)).collect()
    }

    #[test]
    fn single_generator() {
        let h = chain_homology(&gr(&[0]), &IntegerMatrix::zeros(1, 1)).unwrap();
        assert_eq!(h, GradedGroup::z(0));
    }

    #[test]
    fn multiplication_by_two() {
        // x(0), y(-1), dx = 2y
        let d = IntegerMatrix::from_rows(&[[0, 0], [2, 0]]).unwrap();
        let h = chain_homology(&gr(&[0, -1]), &d).unwrap();
        assert_eq!(h, GradedGroup::zero().with_torsion(grading(-1), &[2]));
    }

    #[test]
    fn trefoil_staircase_total() {
        // x(0), y(-1), z(-2), dy = z
        let d = IntegerMatrix::from_rows(&[[0, 0, 0], [0, 0, 0], [0, 1, 0]]).unwrap();
        let h = chain_homology(&gr(&[0, -1, -2]), &d).unwrap();
        assert_eq!(h, GradedGroup::z(0));
    }

    #[test]
    fn rejects_bad_differentials() {
        let wrong_degree = IntegerMatrix::from_rows(&[[0, 0], [1, 0]]).unwrap();
        assert_eq!(
            chain_homology(&gr(&[0, -2]), &wrong_degree),
            Err(Error::WrongDegree { row: 1, col: 0 })
        );
        // a -> b -> c with both maps the identity
        let d = IntegerMatrix::from_rows(&[[0, 0, 0], [1, 0, 0], [0, 1, 0]]).unwrap();
        assert_eq!(
            chain_homology(&gr(&[0, -1, -2]), &d),
            Err(Error::NotSquareZero { row: 2, col: 0 })
        );
    }

    #[test]
    fn euler_poly_examples() {
        let unknot = GradedGroup::z(0);
        assert_eq!(euler_poly([(0, &unknot)]).unwrap(), LaurentPoly::one());

        let top = GradedGroup::z(1);
        let mid = GradedGroup::free(grading(0), 3);
        let bot = GradedGroup::z(-1);
        assert_eq!(
            euler_poly([(1, &top), (0, &mid), (-1, &bot)]).unwrap(),
            LaurentPoly::from_terms([(-1, 1), (3, 0), (-1, -1)])
        );

        let frac = GradedGroup::free(Grading::new(1, 2), 1);
        assert!(matches!(
            euler_poly([(0, &frac)]),
            Err(Error::NonIntegralGrading(_))
        ));
    }
}
