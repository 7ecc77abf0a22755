//! Juxtaposition of GQC codes, exhaustive discovery of small QCCD codes
//! (quasi-cyclic codes that are LCD), and exact rational accounting for
//! finite prefixes of juxtaposition families.

use num_rational::Ratio;

use crate::cyclic::RingElem;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::gqc::GqcCode;

/// Side-by-side juxtaposition [C_1|...|C_a]: block lists concatenate, the
/// dimension is additive and the distance is the minimum over nonzero
/// components.
pub fn juxtapose(codes: &[GqcCode]) -> Result<GqcCode> {
    let first = codes.first().ok_or(Error::ZeroCode)?;
    let field = first.field().clone();
    if codes.iter().any(|c| c.field() != &field) {
        return Err(Error::MixedFields);
    }
    let blocks: Vec<usize> = codes.iter().flat_map(|c| c.blocks().iter().copied()).collect();
    let mut generators = Vec::new();
    for (t, code) in codes.iter().enumerate() {
        for tuple in code.generators() {
            let mut padded = Vec::with_capacity(blocks.len());
            for (s, other) in codes.iter().enumerate() {
                if s == t {
                    padded.extend(tuple.iter().cloned());
                } else {
                    padded.extend(other.blocks().iter().map(|&m| RingElem::zero(&field, m)));
                }
            }
            generators.push(padded);
        }
    }
    Ok(GqcCode::new(&field, blocks, generators))
}

/// Exhaustive search for 1-generator index-2 QC LCD codes with co-index m:
/// all generators (a(x), b(x)) whose code is nonzero and has trivial hull.
/// Returns canonical representatives (distinct as linear codes).
pub fn find_qccd_index2(field: &Field, m: usize, limit: usize) -> Result<Vec<GqcCode>> {
    let q = field.cardinality();
    let count = (q as u128).pow(m as u32);
    let mut found: Vec<GqcCode> = Vec::new();
    let mut seen: Vec<crate::lincode::LinearCode> = Vec::new();
    for ia in 0..count {
        for ib in 0..count {
            if found.len() >= limit {
                return Ok(found);
            }
            if ia == 0 && ib == 0 {
                continue;
            }
            let decode = |mut idx: u128| -> RingElem {
                let cs = (0..m)
                    .map(|_| {
                        let d = (idx % q as u128) as u64;
                        idx /= q as u128;
                        field.element_from_index(d)
                    })
                    .collect();
                RingElem::from_coeffs(field, cs)
            };
            let code = GqcCode::new(field, vec![m, m], vec![vec![decode(ia), decode(ib)]]);
            let lin = code.to_linear();
            if lin.is_zero() || seen.contains(&lin) {
                continue;
            }
            if crate::duality::is_lcd(&code)?.holds {
                seen.push(lin);
                found.push(code);
            }
        }
    }
    Ok(found)
}

/// Known parameters of one component in a juxtaposition step: an
/// [m * ell, k, d] QC code of index ell and co-index m.
#[derive(Clone, Copy, Debug)]
pub struct ComponentParams {
    pub m: usize,
    pub ell: usize,
    pub k: usize,
    pub d: usize,
}

impl ComponentParams {
    pub fn rate(&self) -> Ratio<u64> {
        Ratio::new(self.k as u64, (self.m * self.ell) as u64)
    }

    pub fn relative_distance(&self) -> Ratio<u64> {
        Ratio::new(self.d as u64, (self.m * self.ell) as u64)
    }
}

/// One row of the finite-prefix family table.
#[derive(Clone, Debug)]
pub struct FamilyRow {
    pub step: usize,
    pub length: usize,
    pub dim: usize,
    pub distance: usize,
    pub rate: Ratio<u64>,
    pub relative_distance: Ratio<u64>,
}

/// Exact rate/relative-distance accounting for each step of a juxtaposition
/// family. Per step the rate is the m_i-weighted mean of component rates and
/// the relative distance is the minimum of the m_i-weighted component
/// relative distances; both identities are asserted against the direct
/// dim/length and distance/length ratios.
pub fn family_accounting(steps: &[Vec<ComponentParams>]) -> Result<Vec<FamilyRow>> {
    let mut rows = Vec::with_capacity(steps.len());
    for (step, comps) in steps.iter().enumerate() {
        let first = comps.first().ok_or(Error::ZeroCode)?;
        let ell = first.ell;
        if comps.iter().any(|c| c.ell != ell) {
            return Err(Error::PartitionMismatch);
        }
        let total_m: usize = comps.iter().map(|c| c.m).sum();
        let length = total_m * ell;
        let dim: usize = comps.iter().map(|c| c.k).sum();
        let distance = comps
            .iter()
            .filter(|c| c.k > 0)
            .map(|c| c.d)
            .min()
            .ok_or(Error::ZeroCode)?;
        let rate = Ratio::new(dim as u64, length as u64);
        let relative_distance = Ratio::new(distance as u64, length as u64);
        // weighted identities from the component parameters
        let weighted_rate: Ratio<u64> = comps
            .iter()
            .map(|c| Ratio::new(c.m as u64, total_m as u64) * c.rate())
            .sum();
        let weighted_delta = comps
            .iter()
            .filter(|c| c.k > 0)
            .map(|c| Ratio::new(c.m as u64, total_m as u64) * c.relative_distance())
            .min()
            .unwrap();
        if weighted_rate != rate || weighted_delta != relative_distance {
            return Err(Error::Internal(format!(
                "weighted accounting mismatch at step {step}"
            )));
        }
        rows.push(FamilyRow {
            step,
            length,
            dim,
            distance,
            rate,
            relative_distance,
        });
    }
    Ok(rows)
}
