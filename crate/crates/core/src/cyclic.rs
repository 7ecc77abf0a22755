//! Quotient rings R_j = F_q[x]/(x^{m_j} - 1), minimal cyclic codes and their
//! primitive idempotents, and the maps identifying each field E_i with the
//! minimal cyclic code it generates.

use crate::error::{Error, Result};
use crate::gf::{trace_to, Field, FieldElement};
use crate::polyring::{factor_xm_minus_1, Poly};

/// An element of R = F_q[x]/(x^m - 1), stored as a full length-m coefficient
/// vector. Multiplication by x cyclically shifts the vector.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElem {
    field: Field,
    m: usize,
    coeffs: Vec<FieldElement>,
}

impl RingElem {
    pub fn zero(field: &Field, m: usize) -> RingElem {
        RingElem {
            field: field.clone(),
            m,
            coeffs: vec![field.zero(); m],
        }
    }

    pub fn one(field: &Field, m: usize) -> RingElem {
        let mut e = RingElem::zero(field, m);
        e.coeffs[0] = field.one();
        e
    }

    /// Reduces an arbitrary polynomial mod x^m - 1 by folding exponents.
    pub fn from_poly(poly: &Poly, m: usize) -> RingElem {
        let field = poly.field().clone();
        let mut coeffs = vec![field.zero(); m];
        for (k, c) in poly.coeffs().iter().enumerate() {
            coeffs[k % m] = coeffs[k % m].add(c);
        }
        RingElem { field, m, coeffs }
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<FieldElement>) -> RingElem {
        let m = coeffs.len();
        assert!(m > 0, "block length must be positive");
        RingElem {
            field: field.clone(),
            m,
            coeffs,
        }
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_coeffs(&self.field, self.coeffs.clone())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn block_len(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        assert_eq!(self.m, other.m);
        RingElem {
            field: self.field.clone(),
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        assert_eq!(self.m, other.m);
        RingElem {
            field: self.field.clone(),
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    /// Cyclic convolution: product in F_q[x]/(x^m - 1).
    pub fn mul(&self, other: &RingElem) -> RingElem {
        assert_eq!(self.m, other.m);
        let mut out = vec![self.field.zero(); self.m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % self.m;
                out[k] = out[k].add(&a.mul(b));
            }
        }
        RingElem {
            field: self.field.clone(),
            m: self.m,
            coeffs: out,
        }
    }

    pub fn scale(&self, c: &FieldElement) -> RingElem {
        RingElem {
            field: self.field.clone(),
            m: self.m,
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    /// Multiplication by x^k: cyclic shift of the coefficient vector.
    pub fn shift(&self, k: usize) -> RingElem {
        let k = k % self.m;
        let mut coeffs = vec![self.field.zero(); self.m];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(i + k) % self.m] = c.clone();
        }
        RingElem {
            field: self.field.clone(),
            m: self.m,
            coeffs,
        }
    }
}

impl std::fmt::Debug for RingElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// The primitive idempotent generating the minimal cyclic code of length `m`
/// whose check polynomial is `f`: the unique theta with theta = 1 mod f and
/// theta = 0 mod (x^m - 1)/f. Returns the zero element when f does not
/// divide x^m - 1.
pub fn primitive_idempotent(field: &Field, m: usize, f: &Poly) -> Result<RingElem> {
    if m as u64 % field.characteristic() == 0 {
        return Err(Error::NonSeparable {
            m,
            q: field.cardinality(),
        });
    }
    let xm1 = Poly::xm_minus_1(field, m);
    let (quot, rem) = xm1.divrem(f)?;
    if !rem.is_zero() {
        return Ok(RingElem::zero(field, m));
    }
    let (g, _, v) = f.ext_gcd(&quot);
    debug_assert_eq!(g.degree(), Some(0), "factors of a separable modulus are coprime");
    let scale = g.coeff(0).inv()?;
    let theta = v.scale(&scale).mul(&quot);
    Ok(RingElem::from_poly(&theta, m))
}

/// The concatenation map psi_{i,j}: E_i -> <I_{i,j}>, sending delta to the
/// ring element with coefficients (1/m) Tr_{E_i/F_q}(delta * alpha_i^{-k}).
pub fn psi_map(base: &Field, m: usize, ext: &Field, delta: &FieldElement) -> Result<RingElem> {
    assert!(delta.field() == ext);
    let p = base.characteristic();
    if m as u64 % p == 0 {
        return Err(Error::TraceNormalization { m });
    }
    let f = ext.modulus().expect("constituent field must be an extension");
    let divides = Poly::xm_minus_1(base, m).rem(f).is_zero();
    if !divides {
        if delta.is_zero() {
            return Ok(RingElem::zero(base, m));
        }
        return Err(Error::MaskInconsistent);
    }
    let inv_m = base.from_int(m as u64).inv()?;
    let alpha_inv = ext.alpha().inv()?;
    let mut coeffs = Vec::with_capacity(m);
    let mut pw = ext.one();
    for _ in 0..m {
        let tr = trace_to(&delta.mul(&pw), base)?;
        coeffs.push(tr.mul(&inv_m));
        pw = pw.mul(&alpha_inv);
    }
    Ok(RingElem::from_coeffs(base, coeffs))
}

/// The evaluation map phi_{i,j}: R_j -> E_i, reduction of a(x) mod f_i.
/// Structurally zero (f_i does not divide x^m - 1) evaluates to 0 in E_i.
pub fn phi_map(ext: &Field, a: &RingElem) -> FieldElement {
    let base = a.field();
    let f = ext.modulus().expect("constituent field must be an extension");
    if !Poly::xm_minus_1(base, a.block_len()).rem(f).is_zero() {
        return ext.zero();
    }
    ext.from_base_poly(&a.to_poly())
}

/// The rectangular s x l table of idempotents I_{i,j} for a list of block
/// lengths, indexed by the union of the irreducible factors of all
/// x^{m_j} - 1 in canonical order. Entries are structural zeros where the
/// factor does not divide the block modulus.
#[derive(Clone)]
pub struct IdempotentTable {
    field: Field,
    blocks: Vec<usize>,
    factors: Vec<Poly>,
    fields: Vec<Field>,
    support: Vec<Vec<bool>>,
    entries: Vec<Vec<RingElem>>,
}

impl IdempotentTable {
    pub fn build(field: &Field, blocks: &[usize]) -> Result<IdempotentTable> {
        assert!(!blocks.is_empty(), "at least one block required");
        let mut factors: Vec<Poly> = Vec::new();
        for &m in blocks {
            for f in factor_xm_minus_1(field, m)?.factors() {
                if !factors.contains(f) {
                    factors.push(f.clone());
                }
            }
        }
        factors.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        let fields: Result<Vec<Field>> = factors
            .iter()
            .map(|f| Field::make_extension(field, f))
            .collect();
        let fields = fields?;
        let mut support = Vec::with_capacity(factors.len());
        let mut entries = Vec::with_capacity(factors.len());
        for f in &factors {
            let mut mask = Vec::with_capacity(blocks.len());
            let mut row = Vec::with_capacity(blocks.len());
            for &m in blocks {
                mask.push(Poly::xm_minus_1(field, m).rem(f).is_zero());
                row.push(primitive_idempotent(field, m, f)?);
            }
            support.push(mask);
            entries.push(row);
        }
        Ok(IdempotentTable {
            field: field.clone(),
            blocks: blocks.to_vec(),
            factors,
            fields,
            support,
            entries,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// The global factor list f_1..f_s in canonical order.
    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    /// The constituent field E_i = F_q[x]/(f_i).
    pub fn constituent_field(&self, i: usize) -> &Field {
        &self.fields[i]
    }

    /// Support mask: v_{i,j} = true iff f_i divides x^{m_j} - 1.
    pub fn support(&self) -> &[Vec<bool>] {
        &self.support
    }

    pub fn idempotent(&self, i: usize, j: usize) -> &RingElem {
        &self.entries[i][j]
    }

    /// The row I_i = (I_{i,0}, ..., I_{i,l-1}).
    pub fn row(&self, i: usize) -> &[RingElem] {
        &self.entries[i]
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    /// F_q-dimension of <I_i> = sum of deg f_i over supported blocks.
    pub fn row_dimension(&self, i: usize) -> usize {
        let deg = self.factors[i].degree().unwrap();
        self.support[i].iter().filter(|&&s| s).count() * deg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2)
    }

    fn p2(coeffs: &[u64]) -> Poly {
        let f = f2();
        Poly::from_coeffs(&f, coeffs.iter().map(|&c| f.from_int(c)).collect())
    }

    fn elem(coeffs: &[u64]) -> RingElem {
        let f = f2();
        RingElem::from_coeffs(&f, coeffs.iter().map(|&c| f.from_int(c)).collect())
    }

    #[test]
    fn idempotent_for_x_plus_1_in_r3() {
        // CRT oracle: theta(1) = 1 and theta = 0 mod x^2+x+1
        let theta = primitive_idempotent(&f2(), 3, &p2(&[1, 1])).unwrap();
        assert_eq!(theta, elem(&[1, 1, 1]));
        let at_one = theta.to_poly().eval_in(&f2().one());
        assert!(at_one.is_one());
        assert!(theta.to_poly().rem(&p2(&[1, 1, 1])).is_zero());
    }

    #[test]
    fn idempotent_for_x2_x_1_in_r3() {
        let theta = primitive_idempotent(&f2(), 3, &p2(&[1, 1, 1])).unwrap();
        assert_eq!(theta, elem(&[0, 1, 1]));
        // idempotency: (x + x^2)^2 = x^2 + x^4 = x + x^2 mod x^3 - 1
        assert_eq!(theta.mul(&theta), theta);
    }

    #[test]
    fn idempotent_zero_branch() {
        let theta = primitive_idempotent(&f2(), 5, &p2(&[1, 1, 1])).unwrap();
        assert!(theta.is_zero());
    }

    #[test]
    fn psi_of_zero_is_zero() {
        let base = f2();
        let ext = Field::make_extension(&base, &p2(&[1, 1, 1])).unwrap();
        let out = psi_map(&base, 3, &ext, &ext.zero()).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn psi_of_one_is_the_idempotent() {
        let base = f2();
        for (m, f) in [(3usize, p2(&[1, 1])), (3, p2(&[1, 1, 1])), (5, p2(&[1, 1]))] {
            let ext = Field::make_extension(&base, &f).unwrap();
            let out = psi_map(&base, m, &ext, &ext.one()).unwrap();
            let theta = primitive_idempotent(&base, m, &f).unwrap();
            assert_eq!(out, theta, "m={m} f={f}");
        }
    }

    #[test]
    fn phi_psi_round_trip() {
        let base = f2();
        for m in [3usize, 5, 7, 9] {
            let fact = factor_xm_minus_1(&base, m).unwrap();
            for f in fact.factors() {
                let ext = Field::make_extension(&base, f).unwrap();
                for idx in 0..ext.cardinality() {
                    let delta = ext.element_from_index(idx);
                    let ring = psi_map(&base, m, &ext, &delta).unwrap();
                    assert_eq!(phi_map(&ext, &ring), delta, "m={m} f={f} idx={idx}");
                }
            }
        }
    }

    #[test]
    fn phi_is_multiplicative_and_maps_idempotent_to_one() {
        let base = f2();
        for (blocks, _) in [(vec![3usize, 5, 9], ())] {
            let table = IdempotentTable::build(&base, &blocks).unwrap();
            for i in 0..table.num_factors() {
                let ext = table.constituent_field(i);
                for (j, &m) in blocks.iter().enumerate() {
                    let img = phi_map(ext, table.idempotent(i, j));
                    if table.support()[i][j] {
                        assert!(img.is_one(), "phi(I_{{{i},{j}}}) must be 1, m={m}");
                    } else {
                        assert!(img.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn shift_compatibility_psi_alpha() {
        // x * psi(delta) = psi(alpha * delta)
        let base = f2();
        for m in [3usize, 5, 7, 9] {
            let fact = factor_xm_minus_1(&base, m).unwrap();
            for f in fact.factors() {
                let ext = Field::make_extension(&base, f).unwrap();
                let alpha = ext.alpha();
                for idx in 0..ext.cardinality().min(50) {
                    let delta = ext.element_from_index(idx);
                    let lhs = psi_map(&base, m, &ext, &delta).unwrap().shift(1);
                    let rhs = psi_map(&base, m, &ext, &alpha.mul(&delta)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn table_identities_for_blocks_3_5_9() {
        let table = IdempotentTable::build(&f2(), &[3, 5, 9]).unwrap();
        assert_eq!(table.num_factors(), 4);
        // support mask from the worked example: factor x+1 everywhere,
        // x^2+x+1 on blocks 0 and 2, the degree-4 factor on block 1 only,
        // the degree-6 factor on block 2 only
        let s = table.support();
        assert_eq!(s[0], vec![true, true, true]);
        assert_eq!(s[1], vec![true, false, true]);
        assert_eq!(s[2], vec![false, true, false]);
        assert_eq!(s[3], vec![false, false, true]);
        let sizes: Vec<u64> = (0..4).map(|i| table.constituent_field(i).cardinality()).collect();
        assert_eq!(sizes, vec![2, 4, 16, 64]);

        let ell = table.blocks().len();
        // (i) I_i * I_i = I_i, (ii) I_u * I_v = 0, (iii) sum I_i = 1
        for j in 0..ell {
            let m = table.blocks()[j];
            let mut total = RingElem::zero(&f2(), m);
            for i in 0..table.num_factors() {
                let e = table.idempotent(i, j);
                assert_eq!(&e.mul(e), e);
                for u in 0..table.num_factors() {
                    if u != i {
                        assert!(e.mul(table.idempotent(u, j)).is_zero());
                    }
                }
                total = total.add(e);
            }
            assert_eq!(total, RingElem::one(&f2(), m));
        }
        // dimension identity
        let total_dim: usize = (0..table.num_factors()).map(|i| table.row_dimension(i)).sum();
        assert_eq!(total_dim, 3 + 5 + 9);
    }

    #[test]
    fn single_block_dimension() {
        let table = IdempotentTable::build(&f2(), &[3]).unwrap();
        let total: usize = (0..table.num_factors()).map(|i| table.row_dimension(i)).sum();
        assert_eq!(total, 3);
    }

    #[test]
    fn blocks_3_5_has_three_global_factors() {
        let table = IdempotentTable::build(&f2(), &[3, 5]).unwrap();
        assert_eq!(table.num_factors(), 3);
    }
}
