//! Generic linear codes over any [`Field`]: RREF canonical form, Euclidean
//! and Hermitian duals, intersections, and brute-force minimum distance.
//! This is the oracle layer the structural theorems are checked against.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{hermitian_conj, Field, FieldElement};

/// Default cap on the number of codewords a brute-force enumeration may
/// visit. Exceeding it is an error, never a silent estimate.
pub const DEFAULT_ENUM_BUDGET: u128 = 1 << 24;

/// Euclidean or Hermitian inner product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualForm {
    Euclidean,
    Hermitian,
}

/// A linear code stored by its reduced row echelon basis, which doubles as
/// the canonical form: two codes are equal iff their RREFs are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: Field,
    n: usize,
    basis: Vec<Vec<FieldElement>>,
}

impl LinearCode {
    pub fn from_rows(field: &Field, n: usize, rows: Vec<Vec<FieldElement>>) -> LinearCode {
        for r in &rows {
            assert_eq!(r.len(), n, "row length must equal the code length");
        }
        let basis = rref(field, n, rows);
        LinearCode {
            field: field.clone(),
            n,
            basis,
        }
    }

    pub fn zero(field: &Field, n: usize) -> LinearCode {
        LinearCode {
            field: field.clone(),
            n,
            basis: Vec::new(),
        }
    }

    pub fn full(field: &Field, n: usize) -> LinearCode {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![field.zero(); n];
                r[i] = field.one();
                r
            })
            .collect();
        LinearCode::from_rows(field, n, rows)
    }

    pub fn repetition(field: &Field, n: usize) -> LinearCode {
        LinearCode::from_rows(field, n, vec![vec![field.one(); n]])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// The canonical (RREF) generator matrix.
    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.basis
    }

    /// Membership by reduction against the RREF basis.
    pub fn contains(&self, word: &[FieldElement]) -> bool {
        assert_eq!(word.len(), self.n);
        let mut w = word.to_vec();
        for row in &self.basis {
            let pivot = row.iter().position(|c| !c.is_zero()).unwrap();
            if !w[pivot].is_zero() {
                let f = w[pivot].clone();
                for (wc, rc) in w.iter_mut().zip(row) {
                    *wc = wc.sub(&rc.mul(&f));
                }
            }
        }
        w.iter().all(|c| c.is_zero())
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.basis.iter().all(|r| other.contains(r))
    }

    /// Row-space sum C + D.
    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.field != other.field || self.n != other.n {
            return Err(Error::CodeMismatch);
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.clone());
        Ok(LinearCode::from_rows(&self.field, self.n, rows))
    }

    /// Dual code under the chosen inner product. The Hermitian form pairs
    /// c with conj(d) entrywise and requires the field to admit conjugation.
    pub fn dual(&self, form: DualForm) -> Result<LinearCode> {
        let nullspace = self.euclidean_nullspace();
        let rows = match form {
            DualForm::Euclidean => nullspace,
            DualForm::Hermitian => nullspace
                .into_iter()
                .map(|r| r.iter().map(hermitian_conj).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(LinearCode::from_rows(&self.field, self.n, rows))
    }

    fn euclidean_nullspace(&self) -> Vec<Vec<FieldElement>> {
        let pivots: Vec<usize> = self
            .basis
            .iter()
            .map(|r| r.iter().position(|c| !c.is_zero()).unwrap())
            .collect();
        let mut rows = Vec::with_capacity(self.n - self.dim());
        for j in 0..self.n {
            if pivots.contains(&j) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.n];
            v[j] = self.field.one();
            for (r, &p) in self.basis.iter().zip(&pivots) {
                v[p] = r[j].neg();
            }
            rows.push(v);
        }
        rows
    }

    /// C intersect D, computed as the Euclidean dual of the sum of the
    /// Euclidean duals.
    pub fn intersect(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.field != other.field || self.n != other.n {
            return Err(Error::CodeMismatch);
        }
        let a = self.dual(DualForm::Euclidean)?;
        let b = other.dual(DualForm::Euclidean)?;
        a.sum(&b)?.dual(DualForm::Euclidean)
    }

    /// Restriction of the row space to the kept coordinate positions.
    pub fn puncture(&self, keep: &[usize]) -> LinearCode {
        let rows = self
            .basis
            .iter()
            .map(|r| keep.iter().map(|&j| r[j].clone()).collect())
            .collect();
        LinearCode::from_rows(&self.field, keep.len(), rows)
    }

    /// Re-embeds a code on the kept positions into length n, zeros elsewhere.
    pub fn embed(&self, n: usize, positions: &[usize]) -> LinearCode {
        assert_eq!(positions.len(), self.n);
        let rows = self
            .basis
            .iter()
            .map(|r| {
                let mut v = vec![self.field.zero(); n];
                for (c, &j) in r.iter().zip(positions) {
                    v[j] = c.clone();
                }
                v
            })
            .collect();
        LinearCode::from_rows(&self.field, n, rows)
    }

    /// Applies an entrywise map (a field automorphism or an isomorphism into
    /// another field) to every basis entry.
    pub fn map_entries<F>(&self, target: &Field, f: F) -> Result<LinearCode>
    where
        F: Fn(&FieldElement) -> Result<FieldElement>,
    {
        let rows = self
            .basis
            .iter()
            .map(|r| r.iter().map(&f).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearCode::from_rows(target, self.n, rows))
    }

    /// Brute-force minimum Hamming distance with the default budget.
    pub fn min_distance(&self) -> Result<usize> {
        self.min_distance_with(DEFAULT_ENUM_BUDGET, false)
    }

    /// Brute-force minimum distance enumerating all |F|^k messages. The
    /// parallel path partitions the message space and must return the same
    /// value as the serial path.
    pub fn min_distance_with(&self, budget: u128, parallel: bool) -> Result<usize> {
        let k = self.dim();
        if k == 0 {
            return Err(Error::ZeroCode);
        }
        let q = self.field.cardinality();
        let total = (q as u128)
            .checked_pow(k as u32)
            .ok_or(Error::BudgetExceeded {
                needed: u128::MAX,
                budget,
            })?;
        if total > budget {
            return Err(Error::BudgetExceeded {
                needed: total,
                budget,
            });
        }
        // scaled[i][d] = d-th scalar multiple of basis row i
        let scaled: Vec<Vec<Vec<FieldElement>>> = self
            .basis
            .iter()
            .map(|row| {
                (0..q)
                    .map(|d| {
                        let s = self.field.element_from_index(d);
                        row.iter().map(|c| c.mul(&s)).collect()
                    })
                    .collect()
            })
            .collect();
        let weight_of = |msg: u128| -> usize {
            let mut word: Vec<FieldElement> = vec![self.field.zero(); self.n];
            let mut rest = msg;
            for srow in &scaled {
                let d = (rest % q as u128) as u64;
                rest /= q as u128;
                if d != 0 {
                    for (w, c) in word.iter_mut().zip(&srow[d as usize]) {
                        *w = w.add(c);
                    }
                }
            }
            word.iter().filter(|c| !c.is_zero()).count()
        };
        let min = if parallel {
            (1..total as u64)
                .into_par_iter()
                .map(|msg| weight_of(msg as u128))
                .min()
                .unwrap()
        } else {
            (1..total).map(weight_of).min().unwrap()
        };
        Ok(min)
    }
}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[{}, {}] code over GF({})", self.n, self.dim(), self.field.cardinality())?;
        for r in &self.basis {
            writeln!(f, "  {:?}", r.iter().map(|c| c.index()).collect::<Vec<_>>())?;
        }
        Ok(())
    }
}

/// Reduced row echelon form; returns the nonzero rows.
fn rref(_field: &Field, n: usize, mut rows: Vec<Vec<FieldElement>>) -> Vec<Vec<FieldElement>> {
    let mut rank = 0usize;
    for col in 0..n {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        for c in rows[rank].iter_mut() {
            *c = c.mul(&inv);
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for j in 0..n {
                    let t = rows[rank][j].mul(&f);
                    rows[r][j] = rows[r][j].sub(&t);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f2() -> Field {
        Field::prime(2)
    }

    fn code_from_ints(field: &Field, rows: &[&[u64]]) -> LinearCode {
        let n = rows[0].len();
        LinearCode::from_rows(
            field,
            n,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.element_from_index(v)).collect())
                .collect(),
        )
    }

    fn cordaro_wagner_16() -> LinearCode {
        code_from_ints(
            &f2(),
            &[
                &[1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1],
                &[0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
            ],
        )
    }

    #[test]
    fn zero_matrix_has_dim_zero() {
        let c = code_from_ints(&f2(), &[&[0, 0, 0, 0]]);
        assert_eq!(c.dim(), 0);
    }

    #[test]
    fn cordaro_wagner_is_16_2_10() {
        let c = cordaro_wagner_16();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.min_distance().unwrap(), 10);
    }

    #[test]
    fn rref_preserves_row_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f4 = {
            let f2 = f2();
            let m = Poly::from_coeffs(&f2, vec![f2.one(), f2.one(), f2.one()]);
            Field::make_extension(&f2, &m).unwrap()
        };
        for _ in 0..20 {
            let rows: Vec<Vec<FieldElement>> = (0..5)
                .map(|_| (0..8).map(|_| f4.element_from_index(rng.gen_range(0..4))).collect())
                .collect();
            let c = LinearCode::from_rows(&f4, 8, rows.clone());
            for r in &rows {
                assert!(c.contains(r));
            }
            // every basis row is a combination of the original rows: check via
            // rank equality of the stacked system
            let stacked = LinearCode::from_rows(&f4, 8, rows);
            assert_eq!(stacked.dim(), c.dim());
        }
    }

    #[test]
    fn repetition_dual_is_parity_check() {
        for n in [3usize, 5, 8] {
            let rep = LinearCode::repetition(&f2(), n);
            let dual = rep.dual(DualForm::Euclidean).unwrap();
            assert_eq!(dual.dim(), n - 1);
            // parity-check code: all even-weight words
            for r in dual.basis() {
                let w = r.iter().filter(|c| !c.is_zero()).count();
                assert_eq!(w % 2, 0);
            }
        }
    }

    #[test]
    fn biduality_over_f3() {
        let f3 = Field::prime(3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(2..=10);
            let rows: Vec<Vec<FieldElement>> = (0..rng.gen_range(1..=4))
                .map(|_| (0..n).map(|_| f3.element_from_index(rng.gen_range(0..3))).collect())
                .collect();
            let c = LinearCode::from_rows(&f3, n, rows);
            let dd = c.dual(DualForm::Euclidean).unwrap().dual(DualForm::Euclidean).unwrap();
            assert_eq!(c, dd);
            assert_eq!(c.dim() + c.dual(DualForm::Euclidean).unwrap().dim(), n);
        }
    }

    #[test]
    fn hermitian_dual_over_f4() {
        let f2 = f2();
        let m = Poly::from_coeffs(&f2, vec![f2.one(), f2.one(), f2.one()]);
        let f4 = Field::make_extension(&f2, &m).unwrap();
        let a = f4.alpha();
        let c = LinearCode::from_rows(&f4, 2, vec![vec![f4.one(), a.clone()]]);
        let d = c.dual(DualForm::Hermitian).unwrap();
        assert_eq!(d.dim(), 1);
        // pairing 1*conj(d0) + alpha*conj(d1) = 0
        let row = &d.basis()[0];
        let pair = f4
            .one()
            .mul(&hermitian_conj(&row[0]).unwrap())
            .add(&a.mul(&hermitian_conj(&row[1]).unwrap()));
        assert!(pair.is_zero());
        // hermitian dual is an involution too
        assert_eq!(d.dual(DualForm::Hermitian).unwrap(), c);
    }

    #[test]
    fn intersect_self_and_dimension_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = f2();
        for _ in 0..30 {
            let n = rng.gen_range(2..=12);
            let mk = |rng: &mut ChaCha8Rng| {
                let rows: Vec<Vec<FieldElement>> = (0..rng.gen_range(1..=4))
                    .map(|_| (0..n).map(|_| f.element_from_index(rng.gen_range(0..2))).collect())
                    .collect();
                LinearCode::from_rows(&f, n, rows)
            };
            let c = mk(&mut rng);
            let d = mk(&mut rng);
            assert_eq!(c.intersect(&c).unwrap(), c);
            let inter = c.intersect(&d).unwrap();
            let sum = c.sum(&d).unwrap();
            assert_eq!(c.dim() + d.dim(), sum.dim() + inter.dim());
            assert!(inter.is_subcode_of(&c) && inter.is_subcode_of(&d));
        }
    }

    #[test]
    fn repetition_meets_parity_check_trivially_odd_n() {
        for n in [3usize, 5, 7] {
            let rep = LinearCode::repetition(&f2(), n);
            let pc = rep.dual(DualForm::Euclidean).unwrap();
            assert_eq!(rep.intersect(&pc).unwrap().dim(), 0);
        }
    }

    #[test]
    fn repetition_distance_is_n() {
        for n in [1usize, 4, 9] {
            let rep = LinearCode::repetition(&f2(), n);
            assert_eq!(rep.min_distance().unwrap(), n);
        }
    }

    #[test]
    fn minimal_cyclic_code_distance() {
        // <1 + x + x^2> in R_0 for q=2, m=3 is {000, 111}
        let c = code_from_ints(&f2(), &[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.min_distance().unwrap(), 3);
    }

    #[test]
    fn zero_code_has_no_distance() {
        let c = LinearCode::zero(&f2(), 4);
        assert!(matches!(c.min_distance(), Err(Error::ZeroCode)));
    }

    #[test]
    fn budget_refusal_is_explicit() {
        let c = LinearCode::full(&f2(), 30);
        assert!(matches!(
            c.min_distance_with(1 << 10, false),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn parallel_and_serial_distances_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let n = rng.gen_range(4..=14);
            let rows: Vec<Vec<FieldElement>> = (0..rng.gen_range(1..=5))
                .map(|_| (0..n).map(|_| f2().element_from_index(rng.gen_range(0..2))).collect())
                .collect();
            let c = LinearCode::from_rows(&f2(), n, rows);
            if c.dim() == 0 {
                continue;
            }
            let s = c.min_distance_with(DEFAULT_ENUM_BUDGET, false).unwrap();
            let p = c.min_distance_with(DEFAULT_ENUM_BUDGET, true).unwrap();
            assert_eq!(s, p);
        }
    }

    #[test]
    fn singleton_bound_on_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let f3 = Field::prime(3);
        for _ in 0..20 {
            let n = rng.gen_range(2..=9);
            let rows: Vec<Vec<FieldElement>> = (0..rng.gen_range(1..=3))
                .map(|_| (0..n).map(|_| f3.element_from_index(rng.gen_range(0..3))).collect())
                .collect();
            let c = LinearCode::from_rows(&f3, n, rows);
            if c.dim() == 0 {
                continue;
            }
            let d = c.min_distance().unwrap();
            assert!(c.dim() + d <= n + 1);
        }
    }
}
