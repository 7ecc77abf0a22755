//! Exact arithmetic in prime fields F_p and extension towers F_q[x]/(f),
//! including Frobenius powers, traces to a subfield and Hermitian conjugation.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::Poly;

/// A finite field: either a prime field F_p or an extension of another
/// field by a monic irreducible modulus.
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

enum FieldRepr {
    Prime {
        p: u64,
    },
    Extension {
        base: Field,
        modulus: Poly,
        degree: usize,
        card: u64,
    },
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (FieldRepr::Prime { p: a }, FieldRepr::Prime { p: b }) => a == b,
            (
                FieldRepr::Extension {
                    base: b1,
                    modulus: m1,
                    ..
                },
                FieldRepr::Extension {
                    base: b2,
                    modulus: m2,
                    ..
                },
            ) => b1 == b2 && m1 == m2,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.cardinality())
    }
}

impl Field {
    /// The prime field F_p. `p` must be prime.
    pub fn prime(p: u64) -> Field {
        assert!(is_prime(p), "{p} is not prime");
        Field(Arc::new(FieldRepr::Prime { p }))
    }

    /// Builds F_q[x]/(modulus). The modulus must be monic of degree >= 1 and
    /// irreducible over `base`; otherwise an error naming a found factor is
    /// returned.
    pub fn make_extension(base: &Field, modulus: &Poly) -> Result<Field> {
        assert_eq!(modulus.field(), base, "modulus must be over the base field");
        let deg = modulus.degree().unwrap_or(0);
        if deg < 1 || !modulus.is_monic() {
            return Err(Error::NonMonicModulus);
        }
        if let Some(factor) = modulus.find_factor() {
            return Err(Error::ReducibleModulus {
                factor: factor.to_string(),
            });
        }
        let card = base
            .cardinality()
            .checked_pow(deg as u32)
            .expect("field too large");
        Ok(Field(Arc::new(FieldRepr::Extension {
            base: base.clone(),
            modulus: modulus.clone(),
            degree: deg,
            card,
        })))
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldRepr::Prime { p } => *p,
            FieldRepr::Extension { base, .. } => base.characteristic(),
        }
    }

    pub fn cardinality(&self) -> u64 {
        match &*self.0 {
            FieldRepr::Prime { p } => *p,
            FieldRepr::Extension { card, .. } => *card,
        }
    }

    /// Extension degree over the immediate base field (1 for prime fields).
    pub fn degree(&self) -> usize {
        match &*self.0 {
            FieldRepr::Prime { .. } => 1,
            FieldRepr::Extension { degree, .. } => *degree,
        }
    }

    pub fn base(&self) -> Option<&Field> {
        match &*self.0 {
            FieldRepr::Prime { .. } => None,
            FieldRepr::Extension { base, .. } => Some(base),
        }
    }

    pub fn modulus(&self) -> Option<&Poly> {
        match &*self.0 {
            FieldRepr::Prime { .. } => None,
            FieldRepr::Extension { modulus, .. } => Some(modulus),
        }
    }

    pub fn zero(&self) -> FieldElement {
        match &*self.0 {
            FieldRepr::Prime { .. } => FieldElement {
                field: self.clone(),
                repr: Repr::Prime(0),
            },
            FieldRepr::Extension { base, degree, .. } => FieldElement {
                field: self.clone(),
                repr: Repr::Ext(vec![base.zero(); *degree]),
            },
        }
    }

    pub fn one(&self) -> FieldElement {
        match &*self.0 {
            FieldRepr::Prime { .. } => FieldElement {
                field: self.clone(),
                repr: Repr::Prime(1),
            },
            FieldRepr::Extension { base, degree, .. } => {
                let mut coeffs = vec![base.zero(); *degree];
                coeffs[0] = base.one();
                FieldElement {
                    field: self.clone(),
                    repr: Repr::Ext(coeffs),
                }
            }
        }
    }

    /// Integer multiple of 1, i.e. the image of `n` under Z -> F.
    pub fn from_int(&self, n: u64) -> FieldElement {
        let p = self.characteristic();
        let r = n % p;
        match &*self.0 {
            FieldRepr::Prime { .. } => FieldElement {
                field: self.clone(),
                repr: Repr::Prime(r),
            },
            FieldRepr::Extension { base, .. } => self.embed(&base.from_int(r)),
        }
    }

    /// The element with the given canonical index, 0 <= idx < cardinality.
    /// Indices enumerate coefficient vectors in mixed radix over the base.
    pub fn element_from_index(&self, idx: u64) -> FieldElement {
        debug_assert!(idx < self.cardinality());
        match &*self.0 {
            FieldRepr::Prime { .. } => FieldElement {
                field: self.clone(),
                repr: Repr::Prime(idx),
            },
            FieldRepr::Extension { base, degree, .. } => {
                let b = base.cardinality();
                let mut rest = idx;
                let mut coeffs = Vec::with_capacity(*degree);
                for _ in 0..*degree {
                    coeffs.push(base.element_from_index(rest % b));
                    rest /= b;
                }
                FieldElement {
                    field: self.clone(),
                    repr: Repr::Ext(coeffs),
                }
            }
        }
    }

    /// Iterator over every element of the field in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.cardinality()).map(move |i| self.element_from_index(i))
    }

    /// The residue class of x, the canonical root of the modulus. For a
    /// degree-1 extension by x + c this is the scalar -c.
    pub fn alpha(&self) -> FieldElement {
        match &*self.0 {
            FieldRepr::Prime { .. } => panic!("prime field has no adjoined root"),
            FieldRepr::Extension {
                base,
                modulus,
                degree,
                ..
            } => {
                if *degree == 1 {
                    self.embed(&modulus.coeff(0).neg())
                } else {
                    let mut coeffs = vec![base.zero(); *degree];
                    coeffs[1] = base.one();
                    FieldElement {
                        field: self.clone(),
                        repr: Repr::Ext(coeffs),
                    }
                }
            }
        }
    }

    /// Lifts an element of a field on this field's tower path into this field.
    pub fn embed(&self, e: &FieldElement) -> FieldElement {
        if &e.field == self {
            return e.clone();
        }
        match &*self.0 {
            FieldRepr::Prime { .. } => panic!("cannot embed into a smaller field"),
            FieldRepr::Extension { base, degree, .. } => {
                let lifted = base.embed(e);
                let mut coeffs = vec![base.zero(); *degree];
                coeffs[0] = lifted;
                FieldElement {
                    field: self.clone(),
                    repr: Repr::Ext(coeffs),
                }
            }
        }
    }

    /// Relative degree of this field over `sub`, when `sub` lies on the tower
    /// path.
    pub fn degree_over(&self, sub: &Field) -> Result<usize> {
        if self == sub {
            return Ok(1);
        }
        match &*self.0 {
            FieldRepr::Prime { .. } => Err(Error::NotOnTowerPath),
            FieldRepr::Extension { base, degree, .. } => {
                Ok(degree * base.degree_over(sub)?)
            }
        }
    }

    /// Structural key used for caching and canonical ordering of fields.
    pub(crate) fn structure_key(&self) -> Vec<u64> {
        match &*self.0 {
            FieldRepr::Prime { p } => vec![0, *p],
            FieldRepr::Extension { base, modulus, .. } => {
                let mut k = base.structure_key();
                k.push(1);
                k.push(modulus.degree().unwrap_or(0) as u64);
                for c in modulus.coeffs() {
                    k.push(c.index());
                }
                k
            }
        }
    }
}

/// An element of a [`Field`], stored as a coefficient vector over the base
/// field in the power basis of the residue class of x.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Prime(u64),
    Ext(Vec<FieldElement>),
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Prime(v) => *v == 0,
            Repr::Ext(c) => c.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        self == &self.field.one()
    }

    /// Coefficients over the base field (extension elements only).
    pub fn coeffs(&self) -> &[FieldElement] {
        match &self.repr {
            Repr::Ext(c) => c,
            Repr::Prime(_) => panic!("prime field element has no coefficient vector"),
        }
    }

    /// Canonical index of the element, inverse of `Field::element_from_index`.
    pub fn index(&self) -> u64 {
        match &self.repr {
            Repr::Prime(v) => *v,
            Repr::Ext(c) => {
                let b = self.field.base().unwrap().cardinality();
                let mut idx = 0u64;
                for e in c.iter().rev() {
                    idx = idx * b + e.index();
                }
                idx
            }
        }
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "elements of different fields never mix in arithmetic"
        );
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_field(other);
        match (&self.repr, &other.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => FieldElement {
                field: self.field.clone(),
                repr: Repr::Prime((a + b) % self.field.characteristic()),
            },
            (Repr::Ext(a), Repr::Ext(b)) => FieldElement {
                field: self.field.clone(),
                repr: Repr::Ext(a.iter().zip(b).map(|(x, y)| x.add(y)).collect()),
            },
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> FieldElement {
        match &self.repr {
            Repr::Prime(a) => {
                let p = self.field.characteristic();
                FieldElement {
                    field: self.field.clone(),
                    repr: Repr::Prime((p - a) % p),
                }
            }
            Repr::Ext(c) => FieldElement {
                field: self.field.clone(),
                repr: Repr::Ext(c.iter().map(|x| x.neg()).collect()),
            },
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_field(other);
        match (&self.repr, &other.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => FieldElement {
                field: self.field.clone(),
                repr: Repr::Prime((a * b) % self.field.characteristic()),
            },
            (Repr::Ext(a), Repr::Ext(b)) => {
                let base = self.field.base().unwrap();
                let deg = self.field.degree();
                // schoolbook product followed by reduction mod the modulus
                let mut prod = vec![base.zero(); 2 * deg - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        prod[i + j] = prod[i + j].add(&x.mul(y));
                    }
                }
                let modulus = self.field.modulus().unwrap();
                for k in (deg..prod.len()).rev() {
                    let lead = std::mem::replace(&mut prod[k], base.zero());
                    if lead.is_zero() {
                        continue;
                    }
                    // x^k = -sum_{i<deg} m_i x^{k-deg+i} since modulus is monic
                    for i in 0..deg {
                        let t = lead.mul(&modulus.coeff(i));
                        prod[k - deg + i] = prod[k - deg + i].sub(&t);
                    }
                }
                prod.truncate(deg);
                FieldElement {
                    field: self.field.clone(),
                    repr: Repr::Ext(prod),
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.repr {
            Repr::Prime(a) => {
                let p = self.field.characteristic();
                // Fermat inverse; p is small
                let v = pow_mod(*a, p - 2, p);
                Ok(FieldElement {
                    field: self.field.clone(),
                    repr: Repr::Prime(v),
                })
            }
            Repr::Ext(_) => {
                let base = self.field.base().unwrap();
                let poly = Poly::from_coeffs(base, self.coeffs().to_vec());
                let modulus = self.field.modulus().unwrap();
                let (g, u, _) = poly.ext_gcd(modulus);
                debug_assert_eq!(g.degree(), Some(0));
                let scale = g.coeff(0).inv()?;
                let inv_poly = u.scale(&scale).rem(modulus);
                Ok(self.field.from_base_poly(&inv_poly))
            }
        }
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u128) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative order; the element must be nonzero.
    pub fn order(&self) -> u64 {
        assert!(!self.is_zero());
        let n = self.field.cardinality() - 1;
        let mut ord = n;
        for (r, _) in factorize(n) {
            while ord % r == 0 && self.pow((ord / r) as u128).is_one() {
                ord /= r;
            }
        }
        ord
    }
}

impl Field {
    /// Interprets a polynomial over the base field (degree < extension degree
    /// after reduction) as an element of this extension.
    pub fn from_base_poly(&self, poly: &Poly) -> FieldElement {
        let base = self.base().expect("from_base_poly requires an extension");
        assert_eq!(poly.field(), base);
        let reduced = poly.rem(self.modulus().unwrap());
        let deg = self.degree();
        let mut coeffs = vec![base.zero(); deg];
        for (i, c) in reduced.coeffs().iter().enumerate() {
            coeffs[i] = c.clone();
        }
        FieldElement {
            field: self.clone(),
            repr: Repr::Ext(coeffs),
        }
    }
}

/// Trace of `e` down to the subfield `target` on the tower path:
/// e + e^t + ... + e^{t^{d-1}} with t = |target|, d the relative degree.
/// The result is returned as an element of `target`.
pub fn trace_to(e: &FieldElement, target: &Field) -> Result<FieldElement> {
    let d = e.field().degree_over(target)?;
    let t = target.cardinality();
    let mut acc = e.clone();
    let mut sum = e.clone();
    for _ in 1..d {
        acc = acc.pow(t as u128);
        sum = sum.add(&acc);
    }
    demote_to(&sum, target)
}

/// Rewrites an element that happens to lie in the subfield `target` as an
/// element of `target` proper.
pub fn demote_to(e: &FieldElement, target: &Field) -> Result<FieldElement> {
    if e.field() == target {
        return Ok(e.clone());
    }
    match &e.repr {
        Repr::Prime(_) => Err(Error::NotOnTowerPath),
        Repr::Ext(coeffs) => {
            if coeffs[1..].iter().any(|c| !c.is_zero()) {
                return Err(Error::Internal(
                    "element does not lie in the requested subfield".into(),
                ));
            }
            demote_to(&coeffs[0], target)
        }
    }
}

/// Hermitian conjugation e -> e^sqrt(|F|), taken relative to the immediate
/// base field. Degree-1 components use the identity; fields of odd extension
/// degree > 1 admit no conjugation.
pub fn hermitian_conj(e: &FieldElement) -> Result<FieldElement> {
    let f = e.field();
    let d = f.degree();
    if d == 1 {
        return Ok(e.clone());
    }
    if d % 2 != 0 {
        return Err(Error::NoConjugation {
            card: f.cardinality(),
        });
    }
    let base = f.base().unwrap().cardinality();
    let s = base.pow((d / 2) as u32);
    Ok(e.pow(s as u128))
}

/// Checked arithmetic entry point covering the binary and unary operations.
pub fn field_arith(a: &FieldElement, b: Option<&FieldElement>, op: ArithOp) -> Result<FieldElement> {
    if let Some(b) = b {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch);
        }
    }
    match op {
        ArithOp::Add => Ok(a.add(b.ok_or(Error::FieldMismatch)?)),
        ArithOp::Sub => Ok(a.sub(b.ok_or(Error::FieldMismatch)?)),
        ArithOp::Mul => Ok(a.mul(b.ok_or(Error::FieldMismatch)?)),
        ArithOp::Div => a.div(b.ok_or(Error::FieldMismatch)?),
        ArithOp::Inv => a.inv(),
    }
}

#[derive(Clone, Copy, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.index(), self.field.cardinality())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division factorization, adequate for the field sizes in scope.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
