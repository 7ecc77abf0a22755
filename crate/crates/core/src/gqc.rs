//! Generalized quasi-cyclic codes: the module-generator presentation, the
//! constituent decomposition, concatenated/multilevel reconstruction, and
//! the trace representation. Each presentation is computed independently so
//! they can be checked against each other.

use crate::cyclic::{phi_map, psi_map, IdempotentTable, RingElem};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::lincode::LinearCode;

/// An F_q[x]-submodule of R_0 x ... x R_{l-1}, R_j = F_q[x]/(x^{m_j} - 1),
/// given by a list of generator tuples. The induced F_q-linear code of
/// length sum(m_j) is closed under simultaneous per-block cyclic shift.
#[derive(Clone)]
pub struct GqcCode {
    field: Field,
    blocks: Vec<usize>,
    generators: Vec<Vec<RingElem>>,
}

impl GqcCode {
    pub fn new(field: &Field, blocks: Vec<usize>, generators: Vec<Vec<RingElem>>) -> GqcCode {
        assert!(!blocks.is_empty(), "at least one block is required");
        for tuple in &generators {
            assert_eq!(tuple.len(), blocks.len(), "generator arity must equal block count");
            for (elem, &m) in tuple.iter().zip(&blocks) {
                assert_eq!(elem.block_len(), m);
                assert_eq!(elem.field(), field);
            }
        }
        GqcCode {
            field: field.clone(),
            blocks,
            generators,
        }
    }

    pub fn zero(field: &Field, blocks: Vec<usize>) -> GqcCode {
        GqcCode::new(field, blocks, Vec::new())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn generators(&self) -> &[Vec<RingElem>] {
        &self.generators
    }

    /// Total length sum(m_j).
    pub fn length(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Expands the module to its F_q-linear code: every generator times
    /// x^k for 0 <= k < lcm(m_0..m_{l-1}), reduced to RREF. x^L acts as the
    /// identity on every block, so this exhausts the module action.
    pub fn to_linear(&self) -> LinearCode {
        let n = self.length();
        let big_l = self.blocks.iter().copied().fold(1usize, lcm);
        let mut rows = Vec::with_capacity(self.generators.len() * big_l);
        for tuple in &self.generators {
            for k in 0..big_l {
                let mut row = Vec::with_capacity(n);
                for elem in tuple {
                    row.extend_from_slice(elem.shift(k).coeffs());
                }
                rows.push(row);
            }
        }
        LinearCode::from_rows(&self.field, n, rows)
    }

    /// CRT decomposition into constituents over the fields E_i = F_q[x]/(f_i)
    /// for the irreducible factors f_i of the x^{m_j} - 1.
    pub fn decompose(&self) -> Result<ConstituentSet> {
        let p = self.field.characteristic() as usize;
        for &m in &self.blocks {
            if m % p == 0 {
                return Err(Error::CrtUnavailable { m });
            }
        }
        let table = IdempotentTable::build(&self.field, &self.blocks)?;
        let ell = self.blocks.len();
        let mut constituents = Vec::with_capacity(table.num_factors());
        for i in 0..table.num_factors() {
            let ext = table.constituent_field(i).clone();
            let mask = &table.support()[i];
            let rows: Vec<Vec<FieldElement>> = self
                .generators
                .iter()
                .map(|tuple| {
                    (0..ell)
                        .map(|j| {
                            if mask[j] {
                                phi_map(&ext, &tuple[j])
                            } else {
                                ext.zero()
                            }
                        })
                        .collect()
                })
                .collect();
            constituents.push(LinearCode::from_rows(&ext, ell, rows));
        }
        ConstituentSet::new(table, constituents)
    }

    /// Canonical equality of the induced linear codes.
    pub fn equivalent(&self, other: &GqcCode) -> bool {
        self.field == other.field
            && self.blocks == other.blocks
            && self.to_linear() == other.to_linear()
    }
}

impl std::fmt::Debug for GqcCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GQC code over GF({}), blocks {:?}, {} generators",
            self.field.cardinality(),
            self.blocks,
            self.generators.len()
        )
    }
}

/// The CRT side of a GQC code: one length-l linear code over E_i per global
/// irreducible factor f_i, with structural zeros at blocks f_i does not
/// divide.
#[derive(Clone)]
pub struct ConstituentSet {
    table: IdempotentTable,
    constituents: Vec<LinearCode>,
}

impl ConstituentSet {
    pub fn new(table: IdempotentTable, constituents: Vec<LinearCode>) -> Result<ConstituentSet> {
        if constituents.len() != table.num_factors() {
            return Err(Error::MaskInconsistent);
        }
        for (i, code) in constituents.iter().enumerate() {
            if code.field() != table.constituent_field(i) || code.length() != table.blocks().len() {
                return Err(Error::MixedFields);
            }
            let mask = &table.support()[i];
            for row in code.basis() {
                for (c, &supported) in row.iter().zip(mask) {
                    if !supported && !c.is_zero() {
                        return Err(Error::MaskInconsistent);
                    }
                }
            }
        }
        Ok(ConstituentSet {
            table,
            constituents,
        })
    }

    pub fn table(&self) -> &IdempotentTable {
        &self.table
    }

    pub fn base_field(&self) -> &Field {
        self.table.field()
    }

    pub fn blocks(&self) -> &[usize] {
        self.table.blocks()
    }

    pub fn num_constituents(&self) -> usize {
        self.constituents.len()
    }

    pub fn constituent(&self, i: usize) -> &LinearCode {
        &self.constituents[i]
    }

    pub fn constituents(&self) -> &[LinearCode] {
        &self.constituents
    }

    /// Replaces constituent codes, keeping the factor table. Used to build
    /// dual codes and seeded constructions on the CRT side.
    pub fn with_constituents(&self, constituents: Vec<LinearCode>) -> Result<ConstituentSet> {
        ConstituentSet::new(self.table.clone(), constituents)
    }

    /// dim_{F_q} of the reconstructed code: sum of (deg f_i) * dim_{E_i}(C_i).
    pub fn fq_dimension(&self) -> usize {
        self.constituents
            .iter()
            .enumerate()
            .map(|(i, c)| self.table.factors()[i].degree().unwrap() * c.dim())
            .sum()
    }
}

/// Inverse of [`GqcCode::decompose`]: concatenates each constituent with the
/// minimal cyclic codes via the psi maps. The F_q[x]-module generated by the
/// psi images of an E_i-basis of C_i is exactly the concatenation of C_i.
pub fn reconstruct(set: &ConstituentSet, blocks: &[usize]) -> Result<GqcCode> {
    if blocks != set.blocks() {
        return Err(Error::MaskInconsistent);
    }
    let base = set.base_field().clone();
    let mut generators = Vec::new();
    for i in 0..set.num_constituents() {
        let ext = set.table().constituent_field(i);
        for row in set.constituent(i).basis() {
            let tuple = row
                .iter()
                .zip(blocks)
                .map(|(delta, &m)| psi_map(&base, m, ext, delta))
                .collect::<Result<Vec<_>>>()?;
            generators.push(tuple);
        }
    }
    Ok(GqcCode::new(&base, blocks.to_vec(), generators))
}

/// The trace-representation codeword for one pick lambda_i per constituent:
/// entry k of block j is (1/m_j) * sum_i Tr_{E_i/F_q}(lambda_{i,j} * alpha_i^{-k}).
/// Each pick must belong to its constituent.
pub fn trace_codeword(set: &ConstituentSet, picks: &[Vec<FieldElement>]) -> Result<Vec<FieldElement>> {
    if picks.len() != set.num_constituents() {
        return Err(Error::PartitionMismatch);
    }
    for (i, lambda) in picks.iter().enumerate() {
        if lambda.len() != set.blocks().len() || !set.constituent(i).contains(lambda) {
            return Err(Error::NotInConstituent { index: i });
        }
    }
    let base = set.base_field().clone();
    let blocks = set.blocks().to_vec();
    let mut word = Vec::with_capacity(blocks.iter().sum());
    for (j, &m) in blocks.iter().enumerate() {
        let mut block = vec![base.zero(); m];
        for (i, lambda) in picks.iter().enumerate() {
            let ext = set.table().constituent_field(i);
            let contrib = psi_map(&base, m, ext, &lambda[j])?;
            for (acc, c) in block.iter_mut().zip(contrib.coeffs()) {
                *acc = acc.add(c);
            }
        }
        word.extend(block);
    }
    Ok(word)
}

/// The multilevel concatenated code: the F_q-span of the psi images of an
/// F_q-basis of the stacked outer code. Computed without going through
/// [`reconstruct`], so equality with it is a real check.
pub fn multilevel_image(set: &ConstituentSet) -> Result<LinearCode> {
    let base = set.base_field().clone();
    let blocks = set.blocks().to_vec();
    let n: usize = blocks.iter().sum();
    let mut rows = Vec::new();
    for i in 0..set.num_constituents() {
        let ext = set.table().constituent_field(i).clone();
        let deg = set.table().factors()[i].degree().unwrap();
        let alpha = ext.alpha();
        for row in set.constituent(i).basis() {
            // alpha^e * row, e < deg f_i, is an F_q-basis of the E_i-line
            let mut scaled = row.clone();
            for _ in 0..deg {
                let mut word = Vec::with_capacity(n);
                for (delta, &m) in scaled.iter().zip(&blocks) {
                    word.extend_from_slice(psi_map(&base, m, &ext, delta)?.coeffs());
                }
                rows.push(word);
                scaled = scaled.iter().map(|c| c.mul(&alpha)).collect();
            }
        }
    }
    Ok(LinearCode::from_rows(&base, n, rows))
}

/// Whether the linear code is closed under simultaneous per-block cyclic
/// shift for the given partition.
pub fn is_gqc(code: &LinearCode, blocks: &[usize]) -> Result<bool> {
    if blocks.iter().sum::<usize>() != code.length() {
        return Err(Error::PartitionMismatch);
    }
    for row in code.basis() {
        let mut shifted = Vec::with_capacity(code.length());
        let mut offset = 0;
        for &m in blocks {
            let seg = &row[offset..offset + m];
            shifted.push(seg[m - 1].clone());
            shifted.extend_from_slice(&seg[..m - 1]);
            offset += m;
        }
        if !code.contains(&shifted) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd_usize(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincode::DualForm;
    use crate::polyring::Poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f2() -> Field {
        Field::prime(2)
    }

    fn poly_from_ints(field: &Field, cs: &[u64]) -> Poly {
        Poly::from_coeffs(field, cs.iter().map(|&v| field.element_from_index(v)).collect())
    }

    fn ring_from_ints(field: &Field, m: usize, cs: &[u64]) -> RingElem {
        RingElem::from_poly(&poly_from_ints(field, cs), m)
    }

    fn cordaro_wagner_gqc() -> GqcCode {
        let f = f2();
        let ones = |m: usize, d: usize| ring_from_ints(&f, m, &vec![1; d]);
        let g1 = vec![ones(6, 6), RingElem::zero(&f, 5), ones(5, 5)];
        let g2 = vec![RingElem::zero(&f, 6), ones(5, 5), ones(5, 5)];
        GqcCode::new(&f, vec![6, 5, 5], vec![g1, g2])
    }

    fn random_gqc(rng: &mut ChaCha8Rng, field: &Field, blocks: &[usize], max_gens: usize) -> GqcCode {
        let q = field.cardinality();
        let gens = (0..rng.gen_range(1..=max_gens))
            .map(|_| {
                blocks
                    .iter()
                    .map(|&m| {
                        let cs: Vec<FieldElement> =
                            (0..m).map(|_| field.element_from_index(rng.gen_range(0..q))).collect();
                        RingElem::from_coeffs(field, cs)
                    })
                    .collect()
            })
            .collect();
        GqcCode::new(field, blocks.to_vec(), gens)
    }

    #[test]
    fn cordaro_wagner_expands_to_16_2_10() {
        let c = cordaro_wagner_gqc().to_linear();
        assert_eq!(c.length(), 16);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.min_distance().unwrap(), 10);
        assert!(is_gqc(&c, &[6, 5, 5]).unwrap());
    }

    #[test]
    fn zero_generators_give_zero_code() {
        let c = GqcCode::zero(&f2(), vec![3, 5]);
        assert!(c.to_linear().is_zero());
    }

    #[test]
    fn single_block_matches_cyclic_code_of_gcd() {
        let f = f2();
        let m = 7;
        let g = poly_from_ints(&f, &[1, 0, 0, 1]); // x^3 + 1
        let gen = g.gcd(&Poly::xm_minus_1(&f, m));
        let via_module = GqcCode::new(&f, vec![m], vec![vec![RingElem::from_poly(&g, m)]]);
        let via_gcd = GqcCode::new(&f, vec![m], vec![vec![RingElem::from_poly(&gen, m)]]);
        assert!(via_module.equivalent(&via_gcd));
        assert_eq!(via_module.to_linear().dim(), m - gen.degree().unwrap());
    }

    #[test]
    fn is_gqc_sensitivity_to_partition() {
        let f = f2();
        let c = LinearCode::from_rows(&f, 2, vec![vec![f.one(), f.zero()]]);
        assert!(is_gqc(&c, &[1, 1]).unwrap());
        assert!(!is_gqc(&c, &[2]).unwrap());
        assert!(matches!(is_gqc(&c, &[1, 1, 1]), Err(Error::PartitionMismatch)));
    }

    #[test]
    fn cyclic_code_is_gqc_with_single_block() {
        let f = f2();
        let c = GqcCode::new(&f, vec![7], vec![vec![ring_from_ints(&f, 7, &[1, 1, 0, 1])]]);
        assert!(is_gqc(&c.to_linear(), &[7]).unwrap());
    }

    #[test]
    fn decompose_blocks_3_5_9_structure() {
        let f = f2();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let code = random_gqc(&mut rng, &f, &[3, 5, 9], 3);
        let set = code.decompose().unwrap();
        assert_eq!(set.num_constituents(), 4);
        let sizes: Vec<u64> = (0..4).map(|i| set.table().constituent_field(i).cardinality()).collect();
        assert_eq!(sizes, vec![2, 4, 16, 64]);
        // structural zero patterns: x^2+x+1 misses block m=5, the quartic
        // lives only in block m=5, the sextic only in block m=9
        let masks = set.table().support();
        assert_eq!(masks[0], vec![true, true, true]);
        assert_eq!(masks[1], vec![true, false, true]);
        assert_eq!(masks[2], vec![false, true, false]);
        assert_eq!(masks[3], vec![false, false, true]);
        for (i, cons) in set.constituents().iter().enumerate() {
            for row in cons.basis() {
                for (c, &sup) in row.iter().zip(&masks[i]) {
                    assert!(sup || c.is_zero());
                }
            }
        }
        assert_eq!(set.fq_dimension(), code.to_linear().dim());
    }

    #[test]
    fn decompose_rejects_non_coprime_block() {
        let f = f2();
        let code = GqcCode::zero(&f, vec![3, 4]);
        assert!(matches!(code.decompose(), Err(Error::CrtUnavailable { m: 4 })));
    }

    #[test]
    fn zero_code_has_zero_constituents() {
        let set = GqcCode::zero(&f2(), vec![3, 5]).decompose().unwrap();
        assert!(set.constituents().iter().all(|c| c.is_zero()));
        assert_eq!(set.fq_dimension(), 0);
    }

    #[test]
    fn equal_blocks_match_root_evaluation_oracle() {
        // for QC codes the constituent rows are evaluations at a fixed root
        let f = f2();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let code = random_gqc(&mut rng, &f, &[7, 7], 2);
        let set = code.decompose().unwrap();
        for i in 0..set.num_constituents() {
            let ext = set.table().constituent_field(i);
            let alpha = ext.alpha();
            let evals: Vec<Vec<FieldElement>> = code
                .generators()
                .iter()
                .map(|tuple| tuple.iter().map(|a| a.to_poly().eval_in(&alpha)).collect())
                .collect();
            let oracle = LinearCode::from_rows(ext, 2, evals);
            assert_eq!(&oracle, set.constituent(i));
        }
    }

    #[test]
    fn round_trip_on_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for case in 0..30 {
            let field = if case % 2 == 0 { Field::prime(2) } else { Field::prime(3) };
            let pool: Vec<usize> = [1usize, 3, 5, 7, 9, 13]
                .into_iter()
                .filter(|m| m % field.characteristic() as usize != 0)
                .collect();
            let nblocks = rng.gen_range(1..=3);
            let blocks: Vec<usize> =
                (0..nblocks).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
            let code = random_gqc(&mut rng, &field, &blocks, 3);
            let set = code.decompose().unwrap();
            let back = reconstruct(&set, &blocks).unwrap();
            assert!(code.equivalent(&back), "round trip failed for blocks {blocks:?}");
        }
    }

    #[test]
    fn round_trip_cordaro_analogue_coprime_blocks() {
        // same polynomial pattern as the Cordaro-Wagner generators but on
        // coprime blocks (3,5,5)
        let f = f2();
        let ones = |m: usize, d: usize| ring_from_ints(&f, m, &vec![1; d]);
        let g1 = vec![ones(3, 3), RingElem::zero(&f, 5), ones(5, 5)];
        let g2 = vec![RingElem::zero(&f, 3), ones(5, 5), ones(5, 5)];
        let code = GqcCode::new(&f, vec![3, 5, 5], vec![g1, g2]);
        let back = reconstruct(&code.decompose().unwrap(), &[3, 5, 5]).unwrap();
        assert!(code.equivalent(&back));
    }

    #[test]
    fn reconstruct_checks_block_lengths() {
        let set = GqcCode::zero(&f2(), vec![3, 5]).decompose().unwrap();
        assert!(matches!(reconstruct(&set, &[5, 3]), Err(Error::MaskInconsistent)));
    }

    #[test]
    fn trace_of_zero_picks_is_zero() {
        let f = f2();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let code = random_gqc(&mut rng, &f, &[3, 5], 2);
        let set = code.decompose().unwrap();
        let picks: Vec<Vec<FieldElement>> = (0..set.num_constituents())
            .map(|i| vec![set.table().constituent_field(i).zero(); 2])
            .collect();
        let w = trace_codeword(&set, &picks).unwrap();
        assert!(w.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn trace_rejects_non_members() {
        let f = f2();
        let code = GqcCode::zero(&f, vec![3, 5]);
        let set = code.decompose().unwrap();
        let mut picks: Vec<Vec<FieldElement>> = (0..set.num_constituents())
            .map(|i| vec![set.table().constituent_field(i).zero(); 2])
            .collect();
        picks[0][0] = set.table().constituent_field(0).one();
        assert!(matches!(
            trace_codeword(&set, &picks),
            Err(Error::NotInConstituent { index: 0 })
        ));
    }

    /// The length-8 pattern: blocks (3,5) over F_2 with full constituents
    /// C_1 = E_1^2, C_2 = E_2 x 0, C_3 = 0 x E_3, where E_2 = F_4, E_3 = F_16.
    /// Writing picks as (z1, z2), a + xi1*b, c + xi2*d + xi2^2*e + xi2^3*f,
    /// the codeword must be
    /// (z1+b | z1+a | z1+a+b | z2+d+e+f | z2+c+e+f | z2+c+d+f | z2+c+d+e | z2+c+d+e+f).
    #[test]
    fn trace_pattern_length_8() {
        let f = f2();
        let full_set = {
            let e0 = RingElem::one(&f, 3);
            let e1 = RingElem::one(&f, 5);
            let g1 = vec![e0.clone(), RingElem::zero(&f, 5)];
            let g2 = vec![RingElem::zero(&f, 3), e1];
            GqcCode::new(&f, vec![3, 5], vec![g1, g2]).decompose().unwrap()
        };
        assert_eq!(full_set.num_constituents(), 3);
        let e1 = full_set.table().constituent_field(0).clone();
        let e2 = full_set.table().constituent_field(1).clone();
        let e3 = full_set.table().constituent_field(2).clone();
        assert_eq!((e2.cardinality(), e3.cardinality()), (4, 16));
        let xi1 = e2.alpha();
        let xi2 = e3.alpha();
        for bits in 0u32..256 {
            let b = |k: u32| f.element_from_index(((bits >> k) & 1) as u64);
            let (z1, z2, a, bb, c, d, e, ff) =
                (b(0), b(1), b(2), b(3), b(4), b(5), b(6), b(7));
            let lam2 = e2.embed(&a).add(&xi1.mul(&e2.embed(&bb)));
            let lam3 = e3
                .embed(&c)
                .add(&xi2.mul(&e3.embed(&d)))
                .add(&xi2.pow(2).mul(&e3.embed(&e)))
                .add(&xi2.pow(3).mul(&e3.embed(&ff)));
            let picks = vec![
                vec![e1.embed(&z1), e1.embed(&z2)],
                vec![lam2, e2.zero()],
                vec![e3.zero(), lam3],
            ];
            let got = trace_codeword(&full_set, &picks).unwrap();
            let s = |xs: &[&FieldElement]| xs.iter().fold(f.zero(), |acc, x| acc.add(x));
            let want = vec![
                s(&[&z1, &bb]),
                s(&[&z1, &a]),
                s(&[&z1, &a, &bb]),
                s(&[&z2, &d, &e, &ff]),
                s(&[&z2, &c, &e, &ff]),
                s(&[&z2, &c, &d, &ff]),
                s(&[&z2, &c, &d, &e]),
                s(&[&z2, &c, &d, &e, &ff]),
            ];
            assert_eq!(got, want);
        }
    }

    #[test]
    fn trace_span_equals_linear_code() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for case in 0..10 {
            let field = if case % 2 == 0 { Field::prime(2) } else { Field::prime(3) };
            let code = random_gqc(&mut rng, &field, &[5, 7], 2);
            let set = code.decompose().unwrap();
            let n = code.length();
            // spanning picks: one constituent at a time, basis row times alpha^e
            let mut rows = Vec::new();
            for i in 0..set.num_constituents() {
                let ext = set.table().constituent_field(i).clone();
                let deg = set.table().factors()[i].degree().unwrap();
                let alpha = ext.alpha();
                for row in set.constituent(i).basis() {
                    let mut scaled = row.clone();
                    for _ in 0..deg {
                        let mut picks: Vec<Vec<FieldElement>> = (0..set.num_constituents())
                            .map(|t| vec![set.table().constituent_field(t).zero(); 2])
                            .collect();
                        picks[i] = scaled.clone();
                        rows.push(trace_codeword(&set, &picks).unwrap());
                        scaled = scaled.iter().map(|x| x.mul(&alpha)).collect();
                    }
                }
            }
            let span = LinearCode::from_rows(&field, n, rows);
            assert_eq!(span, code.to_linear());
        }
    }

    #[test]
    fn trace_is_linear_in_each_pick() {
        let f = f2();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let code = random_gqc(&mut rng, &f, &[3, 5], 2);
        let set = code.decompose().unwrap();
        let zero_picks: Vec<Vec<FieldElement>> = (0..set.num_constituents())
            .map(|i| vec![set.table().constituent_field(i).zero(); 2])
            .collect();
        for i in 0..set.num_constituents() {
            let rows = set.constituent(i).basis();
            if rows.len() < 2 {
                continue;
            }
            let mut pa = zero_picks.clone();
            pa[i] = rows[0].clone();
            let mut pb = zero_picks.clone();
            pb[i] = rows[1].clone();
            let mut pab = zero_picks.clone();
            pab[i] = rows[0].iter().zip(&rows[1]).map(|(x, y)| x.add(y)).collect();
            let wa = trace_codeword(&set, &pa).unwrap();
            let wb = trace_codeword(&set, &pb).unwrap();
            let wab = trace_codeword(&set, &pab).unwrap();
            let sum: Vec<FieldElement> = wa.iter().zip(&wb).map(|(x, y)| x.add(y)).collect();
            assert_eq!(wab, sum);
        }
    }

    #[test]
    fn multilevel_single_constituent_is_plain_concatenation() {
        let f = f2();
        // constituent for x^2+x+1 alone on block (3): C = E^1
        let code = GqcCode::new(
            &f,
            vec![3],
            vec![vec![ring_from_ints(&f, 3, &[0, 1, 1])]], // the idempotent x + x^2
        );
        let set = code.decompose().unwrap();
        let img = multilevel_image(&set).unwrap();
        assert_eq!(img, code.to_linear());
    }

    #[test]
    fn multilevel_equals_reconstruct_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for case in 0..15 {
            let field = if case % 2 == 0 { Field::prime(2) } else { Field::prime(3) };
            let pool: Vec<usize> = [1usize, 3, 5, 7, 9]
                .into_iter()
                .filter(|m| m % field.characteristic() as usize != 0)
                .collect();
            let nblocks = rng.gen_range(1..=3);
            let blocks: Vec<usize> =
                (0..nblocks).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
            let code = random_gqc(&mut rng, &field, &blocks, 2);
            let set = code.decompose().unwrap();
            let img = multilevel_image(&set).unwrap();
            let rec = reconstruct(&set, &blocks).unwrap().to_linear();
            assert_eq!(img, rec);
            assert_eq!(img, code.to_linear());
        }
    }

    #[test]
    fn repetition_gqc_dual_is_parity_check() {
        // sanity bridge to lincode: repetition on blocks (3,5) is GQC and its
        // dual is the parity-check code
        let f = f2();
        let rep_gen = vec![
            RingElem::from_coeffs(&f, vec![f.one(); 3]),
            RingElem::from_coeffs(&f, vec![f.one(); 5]),
        ];
        let code = GqcCode::new(&f, vec![3, 5], vec![rep_gen]);
        let lin = code.to_linear();
        assert_eq!(lin.dim(), 1);
        assert!(is_gqc(&lin, &[3, 5]).unwrap());
        let dual = lin.dual(DualForm::Euclidean).unwrap();
        assert!(is_gqc(&dual, &[3, 5]).unwrap());
        assert_eq!(dual.dim(), 7);
    }
}
