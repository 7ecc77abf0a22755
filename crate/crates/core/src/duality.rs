//! Dual GQC codes computed two independent ways: through the constituent
//! structure (Hermitian duals on self-reciprocal factors, swapped Euclidean
//! duals on reciprocal pairs) and by plain linear algebra on the expanded
//! code. Self-dual and LCD verdicts compare both routes and refuse to return
//! an answer the routes disagree on.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::gqc::{reconstruct, ConstituentSet, GqcCode};
use crate::lincode::{DualForm, LinearCode};

/// Indices into the global factor list, split into self-reciprocal factors
/// and reciprocal pairs (primary, mate), primary being the canonically
/// smaller factor.
#[derive(Clone, Debug)]
pub struct FactorClassification {
    pub self_reciprocal: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
}

/// How a factor participates in duality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FactorKind {
    SelfReciprocal,
    PairPrimary,
    PairMate,
}

/// Per-constituent outcome of a self-dual or LCD criterion.
#[derive(Clone, Debug, Serialize)]
pub struct ConstituentEvidence {
    pub index: usize,
    pub kind: FactorKind,
    pub ok: bool,
}

/// A verdict backed by the direct linear-algebra check and, when the code is
/// decomposable, the constituent criteria with per-factor evidence. The two
/// routes are required to agree.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub direct: bool,
    pub constituent: Option<bool>,
    pub evidence: Vec<ConstituentEvidence>,
}

/// Splits the factor list by the reciprocal involution f -> monic x^d f(1/x).
pub fn classify_factors(factors: &[crate::polyring::Poly]) -> Result<FactorClassification> {
    let mut self_reciprocal = Vec::new();
    let mut pairs = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        let mate = f.reciprocal()?.monic();
        if &mate == f {
            self_reciprocal.push(i);
        } else {
            let j = factors
                .iter()
                .position(|g| g == &mate)
                .ok_or_else(|| Error::Internal("factor list not closed under reciprocal".into()))?;
            if i < j {
                pairs.push((i, j));
            }
        }
    }
    Ok(FactorClassification {
        self_reciprocal,
        pairs,
    })
}

/// The field isomorphism H'' -> H' (or back) sending the residue of x to the
/// inverse of the target's canonical root. Well defined because the inverse
/// of a root of f is a root of the reciprocal of f.
fn root_inversion(from: &Field, to: &Field) -> Result<impl Fn(&FieldElement) -> Result<FieldElement>> {
    let to = to.clone();
    let from = from.clone();
    let inv = to.alpha().inv()?;
    Ok(move |e: &FieldElement| -> Result<FieldElement> {
        if e.field() != &from {
            return Err(Error::FieldMismatch);
        }
        let mut acc = to.zero();
        let mut pw = to.one();
        for c in e.coeffs() {
            acc = acc.add(&to.embed(c).mul(&pw));
            pw = pw.mul(&inv);
        }
        Ok(acc)
    })
}

/// Dual taken inside the supported coordinates, keeping structural zeros.
/// The pairing induced on the CRT side by the Euclidean form on F_q^n is
/// block-weighted: the psi maps carry a 1/m_j normalization, so coordinate j
/// pairs with weight 1/m_j. Weighting degenerates to the plain form when all
/// blocks are equal.
fn masked_dual(
    code: &LinearCode,
    mask: &[bool],
    blocks: &[usize],
    form: DualForm,
) -> Result<LinearCode> {
    let keep: Vec<usize> = mask
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s)
        .map(|(j, _)| j)
        .collect();
    let ext = code.field().clone();
    let weights: Vec<FieldElement> = keep
        .iter()
        .map(|&j| ext.from_int(blocks[j] as u64).inv())
        .collect::<Result<Vec<_>>>()?;
    let scaled_rows: Vec<Vec<FieldElement>> = code
        .puncture(&keep)
        .basis()
        .iter()
        .map(|r| r.iter().zip(&weights).map(|(c, w)| c.mul(w)).collect())
        .collect();
    let scaled = LinearCode::from_rows(&ext, keep.len(), scaled_rows);
    let dual = scaled.dual(form)?;
    Ok(dual.embed(mask.len(), &keep))
}

/// Constituents of the dual code: Hermitian duals on self-reciprocal factors
/// and crosswise Euclidean duals on reciprocal pairs, under root-inversion
/// identification.
pub fn dual_constituents(set: &ConstituentSet) -> Result<Vec<LinearCode>> {
    let cls = classify_factors(set.table().factors())?;
    let masks = set.table().support();
    let mut out: Vec<Option<LinearCode>> = vec![None; set.num_constituents()];
    for &i in &cls.self_reciprocal {
        out[i] = Some(masked_dual(
            set.constituent(i),
            &masks[i],
            set.blocks(),
            DualForm::Hermitian,
        )?);
    }
    for &(a, b) in &cls.pairs {
        debug_assert_eq!(masks[a], masks[b], "reciprocal mates share support");
        let ea = set.table().constituent_field(a);
        let eb = set.table().constituent_field(b);
        let into_a = root_inversion(eb, ea)?;
        let into_b = root_inversion(ea, eb)?;
        let cb_in_a = set.constituent(b).map_entries(ea, into_a)?;
        let ca_in_b = set.constituent(a).map_entries(eb, into_b)?;
        out[a] = Some(masked_dual(&cb_in_a, &masks[a], set.blocks(), DualForm::Euclidean)?);
        out[b] = Some(masked_dual(&ca_in_b, &masks[b], set.blocks(), DualForm::Euclidean)?);
    }
    Ok(out.into_iter().map(|c| c.unwrap()).collect())
}

/// The dual GQC code by the constituent route. The result is validated by
/// the two-route equality suite, not assumed.
pub fn dual_gqc(code: &GqcCode) -> Result<GqcCode> {
    let set = code.decompose()?;
    let duals = dual_constituents(&set)?;
    let dual_set = set.with_constituents(duals)?;
    reconstruct(&dual_set, code.blocks())
}

/// The dual of the expanded linear code, available for any block lengths.
pub fn dual_direct(code: &GqcCode) -> Result<LinearCode> {
    code.to_linear().dual(DualForm::Euclidean)
}

fn factor_kind(cls: &FactorClassification, i: usize) -> FactorKind {
    if cls.self_reciprocal.contains(&i) {
        FactorKind::SelfReciprocal
    } else if cls.pairs.iter().any(|&(a, _)| a == i) {
        FactorKind::PairPrimary
    } else {
        FactorKind::PairMate
    }
}

fn two_route_verdict<F>(code: &GqcCode, direct: bool, criterion: F) -> Result<Verdict>
where
    F: Fn(&LinearCode, &LinearCode) -> Result<bool>,
{
    let decomposable = code.decompose().is_ok();
    if !decomposable {
        return Ok(Verdict {
            holds: direct,
            direct,
            constituent: None,
            evidence: Vec::new(),
        });
    }
    let set = code.decompose()?;
    let cls = classify_factors(set.table().factors())?;
    let duals = dual_constituents(&set)?;
    let mut evidence = Vec::with_capacity(set.num_constituents());
    let mut all_ok = true;
    for i in 0..set.num_constituents() {
        let ok = criterion(set.constituent(i), &duals[i])?;
        all_ok &= ok;
        evidence.push(ConstituentEvidence {
            index: i,
            kind: factor_kind(&cls, i),
            ok,
        });
    }
    if all_ok != direct {
        return Err(Error::Internal(format!(
            "constituent route says {all_ok}, direct route says {direct}"
        )));
    }
    Ok(Verdict {
        holds: direct,
        direct,
        constituent: Some(all_ok),
        evidence,
    })
}

/// Self-dual verdict: directly C = C-perp, and per constituent C_i equal to
/// the corresponding dual-side constituent.
pub fn is_self_dual(code: &GqcCode) -> Result<Verdict> {
    let lin = code.to_linear();
    let direct = lin == lin.dual(DualForm::Euclidean)?;
    two_route_verdict(code, direct, |cons, dual_cons| Ok(cons == dual_cons))
}

/// LCD verdict: directly C meets C-perp trivially, and per constituent C_i
/// meets the corresponding dual-side constituent trivially.
pub fn is_lcd(code: &GqcCode) -> Result<Verdict> {
    let lin = code.to_linear();
    let hull = lin.intersect(&lin.dual(DualForm::Euclidean)?)?;
    let direct = hull.dim() == 0;
    two_route_verdict(code, direct, |cons, dual_cons| {
        Ok(cons.intersect(dual_cons)?.dim() == 0)
    })
}
