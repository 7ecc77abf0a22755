//! Jensen-type minimum-distance lower bound for GQC codes, with the QC
//! specialization implemented separately so the two can be cross-checked.

use serde::Serialize;

use crate::cyclic::primitive_idempotent;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::gqc::GqcCode;
use crate::lincode::LinearCode;
use crate::polyring::Poly;

/// Evidence for the bound: nonzero constituents ordered by distance, the
/// per-level column-distance table, and the level values whose minimum is
/// the final bound. `None` in the column table marks a structurally zero
/// column (no level factor divides that block's modulus).
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub constituent_indices: Vec<usize>,
    pub constituent_distances: Vec<usize>,
    pub column_table: Vec<Vec<Option<usize>>>,
    pub level_values: Vec<usize>,
    pub bound: usize,
    pub true_distance: Option<usize>,
}

/// Minimum distance of the direct sum of the minimal cyclic codes in
/// R_t = F_q[x]/(x^{m_t} - 1) whose check polynomials are the level factors
/// dividing x^{m_t} - 1. `None` when no level factor divides (the column is
/// structurally zero and carries no weight).
pub fn column_sum_distance(field: &Field, level: &[Poly], m: usize) -> Result<Option<usize>> {
    let xm1 = Poly::xm_minus_1(field, m);
    let mut rows = Vec::new();
    for f in level {
        if !xm1.rem(f).is_zero() {
            continue;
        }
        let theta = primitive_idempotent(field, m, f)?;
        for k in 0..m {
            rows.push(theta.shift(k).coeffs().to_vec());
        }
    }
    if rows.is_empty() {
        return Ok(None);
    }
    let code = LinearCode::from_rows(field, m, rows);
    Ok(Some(code.min_distance()?))
}

/// The GQC distance bound: d(C) >= min_u D_u, where D_u is the sum of the
/// d_u smallest finite column distances at level u and d_1 <= ... <= d_g are
/// the distances of the nonzero constituents.
pub fn jensen_bound_gqc(code: &GqcCode) -> Result<BoundReport> {
    let set = code.decompose()?;
    let field = code.field().clone();
    let blocks = code.blocks().to_vec();
    // nonzero constituents ordered by (distance, index); ties broken by the
    // canonical factor order for determinism
    let mut ranked: Vec<(usize, usize)> = Vec::new();
    for i in 0..set.num_constituents() {
        let cons = set.constituent(i);
        if cons.is_zero() {
            continue;
        }
        ranked.push((cons.min_distance()?, i));
    }
    if ranked.is_empty() {
        return Err(Error::ZeroCode);
    }
    ranked.sort();
    let constituent_indices: Vec<usize> = ranked.iter().map(|&(_, i)| i).collect();
    let constituent_distances: Vec<usize> = ranked.iter().map(|&(d, _)| d).collect();
    let mut column_table = Vec::with_capacity(ranked.len());
    let mut level_values = Vec::with_capacity(ranked.len());
    for u in 1..=ranked.len() {
        let level: Vec<Poly> = constituent_indices[..u]
            .iter()
            .map(|&i| set.table().factors()[i].clone())
            .collect();
        let row: Vec<Option<usize>> = blocks
            .iter()
            .map(|&m| column_sum_distance(&field, &level, m))
            .collect::<Result<Vec<_>>>()?;
        let mut finite: Vec<usize> = row.iter().filter_map(|&d| d).collect();
        finite.sort_unstable();
        let d_u = constituent_distances[u - 1];
        if finite.len() < d_u {
            return Err(Error::Internal(format!(
                "level {u} has {} finite columns but needs {d_u}",
                finite.len()
            )));
        }
        level_values.push(finite[..d_u].iter().sum());
        column_table.push(row);
    }
    let bound = *level_values.iter().min().unwrap();
    Ok(BoundReport {
        constituent_indices,
        constituent_distances,
        column_table,
        level_values,
        bound,
        true_distance: None,
    })
}

/// Jensen's bound for QC codes (all blocks equal), computed from scratch:
/// constituents by evaluation at a canonical root of each factor, levels as
/// d(C_{i_u}) times the distance of the direct sum of minimal cyclic codes.
pub fn jensen_qc_bound(code: &GqcCode) -> Result<usize> {
    let m = code.blocks()[0];
    if code.blocks().iter().any(|&b| b != m) {
        return Err(Error::PartitionMismatch);
    }
    let field = code.field().clone();
    let ell = code.blocks().len();
    let factors = crate::polyring::factor_xm_minus_1(&field, m)?;
    let mut ranked: Vec<(usize, Poly)> = Vec::new();
    for f in factors.factors() {
        let ext = Field::make_extension(&field, f)?;
        let alpha = ext.alpha();
        let rows: Vec<Vec<crate::gf::FieldElement>> = code
            .generators()
            .iter()
            .map(|tuple| tuple.iter().map(|a| a.to_poly().eval_in(&alpha)).collect())
            .collect();
        let cons = LinearCode::from_rows(&ext, ell, rows);
        if !cons.is_zero() {
            ranked.push((cons.min_distance()?, f.clone()));
        }
    }
    if ranked.is_empty() {
        return Err(Error::ZeroCode);
    }
    ranked.sort_by(|a, b| (a.0, a.1.sort_key()).cmp(&(b.0, b.1.sort_key())));
    let mut best = usize::MAX;
    for u in 1..=ranked.len() {
        let level: Vec<Poly> = ranked[..u].iter().map(|(_, f)| f.clone()).collect();
        let col = column_sum_distance(&field, &level, m)?
            .expect("every factor of x^m - 1 divides its own modulus");
        best = best.min(ranked[u - 1].0 * col);
    }
    Ok(best)
}
