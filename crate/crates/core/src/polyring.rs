//! Dense univariate polynomials over any [`Field`], factorization of x^m - 1
//! via cyclotomic cosets, and reciprocal/self-reciprocal classification.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// A dense univariate polynomial, coefficients in ascending degree with
/// trailing zeros trimmed. The zero polynomial has an empty vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn from_coeffs(field: &Field, mut coeffs: Vec<FieldElement>) -> Poly {
        for c in &coeffs {
            assert!(c.field() == field, "coefficient from a foreign field");
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::from_coeffs(field, vec![field.one()])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::from_coeffs(field, vec![field.zero(), field.one()])
    }

    /// c * x^k
    pub fn monomial(field: &Field, c: FieldElement, k: usize) -> Poly {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(field, coeffs)
    }

    /// x^m - 1
    pub fn xm_minus_1(field: &Field, m: usize) -> Poly {
        let mut coeffs = vec![field.zero(); m + 1];
        coeffs[0] = field.one().neg();
        coeffs[m] = field.one();
        Poly::from_coeffs(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert!(self.field == other.field);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly::from_coeffs(&self.field, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        Poly::from_coeffs(&self.field, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert!(self.field == other.field);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(&self.field, out)
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        assert!(self.field == divisor.field);
        let d = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() < d + 1 {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let factor = rem[k].mul(&lead_inv);
            if factor.is_zero() {
                continue;
            }
            quot[k - d] = factor.clone();
            for i in 0..=d {
                let t = factor.mul(&divisor.coeff(i));
                rem[k - d + i] = rem[k - d + i].sub(&t);
            }
        }
        rem.truncate(d);
        Ok((
            Poly::from_coeffs(&self.field, quot),
            Poly::from_coeffs(&self.field, rem),
        ))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divrem(divisor).expect("division by zero polynomial").1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns (g, u, v) with u*a + v*b = g and g monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let field = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Poly::one(field), Poly::zero(field));
        let (mut v0, mut v1) = (Poly::zero(field), Poly::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).unwrap();
            let u = u0.sub(&q.mul(&u1));
            let v = v0.sub(&q.mul(&v1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
            v0 = v1;
            v1 = v;
        }
        if r0.is_zero() {
            return (r0, u0, v0);
        }
        let lead_inv = r0.leading().unwrap().inv().unwrap();
        (r0.scale(&lead_inv), u0.scale(&lead_inv), v0.scale(&lead_inv))
    }

    /// Normalizes to a monic polynomial (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Evaluates at a point lying in this field or an extension of it.
    pub fn eval_in(&self, at: &FieldElement) -> FieldElement {
        let target = at.field().clone();
        let mut acc = target.zero();
        for c in self.coeffs.iter().rev() {
            let lifted = if c.field() == &target {
                c.clone()
            } else {
                target.embed(c)
            };
            acc = acc.mul(at).add(&lifted);
        }
        acc
    }

    /// self^e mod modulus.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Poly {
        let mut base = self.rem(modulus);
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(modulus);
            }
        }
        acc
    }

    /// Monic normalization of x^deg * f(1/x). Errors when f(0) = 0.
    pub fn reciprocal(&self) -> Result<Poly> {
        if self.coeff(0).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let mut rev = self.coeffs.clone();
        rev.reverse();
        Ok(Poly::from_coeffs(&self.field, rev).monic())
    }

    /// Distinct-degree irreducibility test: reducible iff some k <= deg/2
    /// has gcd(x^{q^k} - x, f) nontrivial. Degree-<=1 polynomials count as
    /// irreducible.
    pub fn is_irreducible(&self) -> bool {
        let deg = self.degree().unwrap_or(0);
        if deg <= 1 {
            return true;
        }
        let q = self.field.cardinality();
        let me = self.monic();
        let x = Poly::x(&self.field);
        let mut frob = x.clone();
        for _ in 1..=deg / 2 {
            frob = frob.pow_mod(q, &me);
            if frob.sub(&x).gcd(&me).degree().unwrap_or(0) >= 1 {
                return false;
            }
        }
        true
    }

    /// Finds a nontrivial monic factor if the polynomial is reducible;
    /// `None` means irreducible. Degree-<=1 polynomials count as irreducible.
    pub fn find_factor(&self) -> Option<Poly> {
        let deg = self.degree().unwrap_or(0);
        if deg <= 1 {
            return None;
        }
        let q = self.field.cardinality();
        let me = self.monic();
        let x = Poly::x(&self.field);
        let mut frob = x.clone();
        for _ in 1..=deg / 2 {
            frob = frob.pow_mod(q, &me);
            let g = frob.sub(&x).gcd(&me);
            if let Some(gd) = g.degree() {
                if gd >= 1 {
                    if gd < deg {
                        return Some(g);
                    }
                    // equal-degree split by trial division over small degrees
                    return self.trial_division_factor();
                }
            }
        }
        None
    }

    fn trial_division_factor(&self) -> Option<Poly> {
        let deg = self.degree().unwrap_or(0);
        let q = self.field.cardinality();
        for d in 1..=deg / 2 {
            let count = q.checked_pow(d as u32)?;
            if count > 1 << 20 {
                return Some(self.clone());
            }
            for idx in 0..count {
                let mut coeffs = Vec::with_capacity(d + 1);
                let mut rest = idx;
                for _ in 0..d {
                    coeffs.push(self.field.element_from_index(rest % q));
                    rest /= q;
                }
                coeffs.push(self.field.one());
                let cand = Poly::from_coeffs(&self.field, coeffs);
                if self.rem(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
        None
    }

    /// Ordering key: ascending degree, then lexicographic on the ascending
    /// coefficient vector (by canonical element index).
    pub fn sort_key(&self) -> (usize, Vec<u64>) {
        (
            self.coeffs.len(),
            self.coeffs.iter().map(|c| c.index()).collect(),
        )
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = c.index();
            let term = match (k, coeff) {
                (0, v) => format!("{v}"),
                (1, 1) => "x".to_string(),
                (1, v) => format!("{v}*x"),
                (k, 1) => format!("x^{k}"),
                (k, v) => format!("{v}*x^{k}"),
            };
            terms.push(term);
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Factorization of x^m - 1 into distinct monic irreducible factors, each
/// paired with its cyclotomic coset.
#[derive(Clone)]
pub struct Factorization {
    field: Field,
    m: usize,
    factors: Vec<Poly>,
    cosets: Vec<Vec<usize>>,
}

impl Factorization {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn modulus_exponent(&self) -> usize {
        self.m
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }
}

/// Cyclotomic cosets {a, aq, aq^2, ...} mod m; they partition {0..m-1}.
/// Sorted by minimum representative, entries ascending.
pub fn cyclotomic_cosets(field: &Field, m: usize) -> Result<Vec<Vec<usize>>> {
    let q = field.cardinality();
    if m == 0 || m as u64 % field.characteristic() == 0 {
        return Err(Error::NonSeparable { m, q });
    }
    let mut seen = vec![false; m];
    let mut cosets = Vec::new();
    for a in 0..m {
        if seen[a] {
            continue;
        }
        let mut coset = Vec::new();
        let mut cur = a;
        loop {
            seen[cur] = true;
            coset.push(cur);
            cur = ((cur as u128 * q as u128) % m as u128) as usize;
            if cur == a {
                break;
            }
        }
        coset.sort_unstable();
        cosets.push(coset);
    }
    Ok(cosets)
}

fn factor_cache() -> &'static Mutex<HashMap<(Vec<u64>, usize), FactorCacheEntry>> {
    static CACHE: OnceLock<Mutex<HashMap<(Vec<u64>, usize), FactorCacheEntry>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

#[derive(Clone)]
struct FactorCacheEntry {
    factors: Vec<Poly>,
    cosets: Vec<Vec<usize>>,
}

/// Factors x^m - 1 over `field` into distinct monic irreducible polynomials,
/// in canonical order (ascending degree, then lexicographic coefficients).
pub fn factor_xm_minus_1(field: &Field, m: usize) -> Result<Factorization> {
    let key = (field.structure_key(), m);
    if let Some(entry) = factor_cache().lock().unwrap().get(&key) {
        return Ok(Factorization {
            field: field.clone(),
            m,
            factors: entry.factors.clone(),
            cosets: entry.cosets.clone(),
        });
    }
    let cosets = cyclotomic_cosets(field, m)?;
    let (split, beta) = splitting_field(field, m);

    let mut items: Vec<(Poly, Vec<usize>)> = Vec::with_capacity(cosets.len());
    for coset in &cosets {
        let min_poly = coset_min_poly(field, &split, &beta, coset)?;
        debug_assert_eq!(min_poly.degree(), Some(coset.len()));
        items.push((min_poly, coset.clone()));
    }
    items.sort_by(|a, b| a.0.sort_key().cmp(&b.0.sort_key()));

    // the product of the factors must reconstruct x^m - 1 exactly
    let mut product = Poly::one(field);
    for (f, _) in &items {
        product = product.mul(f);
    }
    if product != Poly::xm_minus_1(field, m) {
        return Err(Error::Internal(format!(
            "factor product does not reconstruct x^{m} - 1"
        )));
    }

    let (factors, cosets): (Vec<_>, Vec<_>) = items.into_iter().unzip();
    factor_cache().lock().unwrap().insert(
        key,
        FactorCacheEntry {
            factors: factors.clone(),
            cosets: cosets.clone(),
        },
    );
    Ok(Factorization {
        field: field.clone(),
        m,
        factors,
        cosets,
    })
}

/// Smallest splitting field of x^m - 1 over `field`, together with an element
/// of multiplicative order m.
fn splitting_field(field: &Field, m: usize) -> (Field, FieldElement) {
    if m == 1 {
        return (field.clone(), field.one());
    }
    let q = field.cardinality();
    // t = multiplicative order of q mod m
    let mut t = 1usize;
    let mut pw = q as u128 % m as u128;
    while pw != 1 {
        pw = pw * (q as u128) % m as u128;
        t += 1;
    }
    let split = if t == 1 {
        field.clone()
    } else {
        let modulus = find_irreducible(field, t);
        Field::make_extension(field, &modulus).expect("constructed modulus must be irreducible")
    };
    let card = split.cardinality();
    debug_assert_eq!((card - 1) % m as u64, 0);
    // e^((card-1)/m) has order dividing m; accept once it is exactly m
    let m_primes: Vec<u64> = crate::gf::factorize(m as u64)
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    let cofactor = ((card - 1) / m as u64) as u128;
    for idx in 2..card {
        let cand = split.element_from_index(idx).pow(cofactor);
        if cand.is_zero() || cand.is_one() {
            continue;
        }
        if m_primes
            .iter()
            .all(|&r| !cand.pow((m as u64 / r) as u128).is_one())
        {
            debug_assert!(cand.pow(m as u128).is_one());
            return (split, cand);
        }
    }
    unreachable!("the multiplicative group contains elements of order m")
}

/// Minimal polynomial over `field` of beta^a for a coset representative,
/// found as the first monic linear dependency among the powers of the root,
/// expressed in coordinates over `field`.
fn coset_min_poly(
    field: &Field,
    split: &Field,
    beta: &FieldElement,
    coset: &[usize],
) -> Result<Poly> {
    let gamma = beta.pow(coset[0] as u128);
    let d = coset.len();
    let coords = |e: &FieldElement| -> Vec<FieldElement> {
        if split == field {
            vec![e.clone()]
        } else {
            e.coeffs().to_vec()
        }
    };
    // columns gamma^0 .. gamma^{d-1}, right-hand side -gamma^d
    let mut powers = Vec::with_capacity(d + 1);
    let mut acc = split.one();
    for _ in 0..=d {
        powers.push(coords(&acc));
        acc = acc.mul(&gamma);
    }
    let t = powers[0].len();
    let rhs: Vec<FieldElement> = powers[d].iter().map(|c| c.neg()).collect();
    // Gaussian elimination on the t x d system
    let mut aug: Vec<Vec<FieldElement>> = (0..t)
        .map(|row| {
            let mut r: Vec<FieldElement> = (0..d).map(|k| powers[k][row].clone()).collect();
            r.push(rhs[row].clone());
            r
        })
        .collect();
    let mut pivot_of_col = vec![usize::MAX; d];
    let mut rank = 0usize;
    for col in 0..d {
        let Some(pr) = (rank..t).find(|&r| !aug[r][col].is_zero()) else {
            return Err(Error::Internal("coset powers are linearly dependent early".into()));
        };
        aug.swap(rank, pr);
        let inv = aug[rank][col].inv()?;
        for x in aug[rank].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..t {
            if r != rank && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for k in 0..=d {
                    let s = aug[rank][k].mul(&f);
                    aug[r][k] = aug[r][k].sub(&s);
                }
            }
        }
        pivot_of_col[col] = rank;
        rank += 1;
    }
    let mut coeffs: Vec<FieldElement> = (0..d)
        .map(|col| aug[pivot_of_col[col]][d].clone())
        .collect();
    coeffs.push(field.one());
    Ok(Poly::from_coeffs(field, coeffs))
}

/// First monic irreducible polynomial of the given degree in canonical
/// coefficient order.
pub fn find_irreducible(field: &Field, degree: usize) -> Poly {
    let q = field.cardinality();
    let count = (q as u128).pow(degree as u32);
    let mut idx = 0u128;
    while idx < count {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut rest = idx;
        for _ in 0..degree {
            coeffs.push(field.element_from_index((rest % q as u128) as u64));
            rest /= q as u128;
        }
        coeffs.push(field.one());
        let cand = Poly::from_coeffs(field, coeffs);
        if !cand.coeff(0).is_zero() && cand.is_irreducible() {
            return cand;
        }
        idx += 1;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Splits a list of distinct irreducible factors into self-reciprocal
/// polynomials and reciprocal pairs (h, h*). Within a pair the
/// lexicographically smaller polynomial is designated h.
pub fn classify_reciprocal(factors: &[Poly]) -> Result<(Vec<Poly>, Vec<(Poly, Poly)>)> {
    let mut selfrec = Vec::new();
    let mut pairs: Vec<(Poly, Poly)> = Vec::new();
    let mut used = vec![false; factors.len()];
    for (i, f) in factors.iter().enumerate() {
        if used[i] {
            continue;
        }
        let r = f.reciprocal()?;
        if &r == f {
            selfrec.push(f.clone());
            used[i] = true;
            continue;
        }
        let j = factors
            .iter()
            .position(|g| g == &r)
            .ok_or_else(|| Error::Internal("reciprocal mate missing from factor list".into()))?;
        used[i] = true;
        used[j] = true;
        if f.sort_key() <= r.sort_key() {
            pairs.push((f.clone(), r));
        } else {
            pairs.push((r, f.clone()));
        }
    }
    Ok((selfrec, pairs))
}

/// Checked entry point for the binary polynomial operations.
pub fn poly_arith(a: &Poly, b: &Poly, op: PolyOp) -> Result<PolyArithResult> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        PolyOp::Add => PolyArithResult::One(a.add(b)),
        PolyOp::Mul => PolyArithResult::One(a.mul(b)),
        PolyOp::DivRem => {
            let (q, r) = a.divrem(b)?;
            PolyArithResult::Pair(q, r)
        }
        PolyOp::Gcd => PolyArithResult::One(a.gcd(b)),
        PolyOp::ExtGcd => {
            let (g, u, v) = a.ext_gcd(b);
            PolyArithResult::Triple(g, u, v)
        }
    })
}

#[derive(Clone, Copy, Debug)]
pub enum PolyOp {
    Add,
    Mul,
    DivRem,
    Gcd,
    ExtGcd,
}

pub enum PolyArithResult {
    One(Poly),
    Pair(Poly, Poly),
    Triple(Poly, Poly, Poly),
}
