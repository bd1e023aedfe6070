//! Exact arithmetic in the tower `F_p ⊆ F_q ⊆ K = F_{q³}`.
//!
//! Elements of `F_q` are stored as integer encodings `0..q` (the base-`p`
//! digits are the coefficients over `F_p`, low digit first). Elements of `K`
//! are coefficient triples over `F_q` in the power basis `1, u, u²` of the
//! cubic extension modulus. Every element keeps a handle to its tower and
//! mixing towers is an error.

mod poly;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub(crate) use poly::prime_power;

/// Largest base field handled unless a caller asks for more.
pub const DEFAULT_MAX_Q: u32 = 16;

/// Largest characteristic accepted by [`make_tower`].
pub const MAX_CHARACTERISTIC: u32 = 97;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("base degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {q} exceeds the size bound {bound}")]
    SizeBound { q: u64, bound: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different field towers")]
    TowerMismatch,
    #[error("coefficient {value} out of range for a field of order {q}")]
    CoefficientRange { value: u32, q: u32 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(&'static str),
}

/// The tower `F_p ⊆ F_q ⊆ F_{q³}` with precomputed `F_q` tables.
#[derive(Debug, PartialEq, Eq)]
pub struct FieldTower {
    char_p: u32,
    base_degree: u32,
    q: u32,
    base_modulus: Vec<u32>,
    ext_modulus: [u32; 4],
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// Builds the tower for `q = char_p^base_degree`, capped at [`DEFAULT_MAX_Q`].
pub fn make_tower(char_p: u32, base_degree: u32) -> Result<Arc<FieldTower>, GfError> {
    make_tower_bounded(char_p, base_degree, DEFAULT_MAX_Q)
}

/// Builds the tower for a base field of order `q`.
pub fn tower_for_order(q: u32) -> Result<Arc<FieldTower>, GfError> {
    let (p, e) = prime_power(q).ok_or(GfError::NotPrimePower(q))?;
    make_tower(p, e)
}

pub fn make_tower_bounded(
    char_p: u32,
    base_degree: u32,
    max_q: u32,
) -> Result<Arc<FieldTower>, GfError> {
    if !poly::is_prime(char_p) {
        return Err(GfError::CompositeCharacteristic(char_p));
    }
    if base_degree == 0 {
        return Err(GfError::ZeroDegree);
    }
    if char_p > MAX_CHARACTERISTIC {
        return Err(GfError::SizeBound {
            q: char_p as u64,
            bound: MAX_CHARACTERISTIC as u64,
        });
    }
    let q = (char_p as u64).saturating_pow(base_degree);
    if q > max_q as u64 {
        return Err(GfError::SizeBound {
            q,
            bound: max_q as u64,
        });
    }
    Ok(Arc::new(FieldTower::build(char_p, base_degree, q as u32)?))
}

impl FieldTower {
    fn build(p: u32, e: u32, q: u32) -> Result<Self, GfError> {
        let base_modulus = (0..p.pow(e))
            .map(|code| poly::monic_from_code(code, e, p))
            .find(|f| poly::is_irreducible(f, p))
            .ok_or(GfError::InternalInconsistency(
                "no irreducible base modulus",
            ))?;

        let qs = q as usize;
        let digits = |mut c: u32| -> Vec<u32> {
            (0..e)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    d
                })
                .collect()
        };
        let encode = |coeffs: &[u32]| -> u32 { coeffs.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&sum);

                let mut prod = vec![0u32; (2 * e - 1) as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly::rem(&prod, &base_modulus, p);
                r.resize(e as usize, 0);
                mul[(a * q + b) as usize] = encode(&r);
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap())
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap()
                }
            })
            .collect();

        let mut tower = FieldTower {
            char_p: p,
            base_degree: e,
            q,
            base_modulus,
            ext_modulus: [0, 0, 0, 1],
            add,
            mul,
            neg,
            inv,
        };

        // A cubic is irreducible over F_q iff it has no root in F_q.
        let ext = (0..q.pow(3))
            .map(|code| [code % q, (code / q) % q, code / (q * q), 1])
            .find(|m| (0..q).all(|x| tower.eval_cubic(m, x) != 0))
            .ok_or(GfError::InternalInconsistency("no irreducible cubic"))?;
        tower.ext_modulus = ext;
        Ok(tower)
    }

    fn eval_cubic(&self, m: &[u32; 4], x: u32) -> u32 {
        m.iter()
            .rev()
            .fold(0, |acc, &c| self.fq_add(self.fq_mul(acc, x), c))
    }

    pub fn char_p(&self) -> u32 {
        self.char_p
    }

    pub fn base_degree(&self) -> u32 {
        self.base_degree
    }

    /// Order of the base field `F`.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the extension `K`, always `q³`.
    pub fn order(&self) -> u32 {
        self.q * self.q * self.q
    }

    /// Monic modulus of `F_q` over `F_p`, coefficients low-to-high.
    pub fn base_modulus(&self) -> &[u32] {
        &self.base_modulus
    }

    /// Monic cubic modulus of `K` over `F_q`, coefficients low-to-high as
    /// `F_q` encodings.
    pub fn ext_modulus(&self) -> [u32; 4] {
        self.ext_modulus
    }

    /// Coefficients over `F_p` of an `F_q` encoding, low-to-high.
    pub fn scalar_digits(&self, c: u32) -> Vec<u32> {
        let mut c = c;
        (0..self.base_degree)
            .map(|_| {
                let d = c % self.char_p;
                c /= self.char_p;
                d
            })
            .collect()
    }

    #[inline]
    pub fn fq_add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn fq_mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn fq_neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn fq_sub(&self, a: u32, b: u32) -> u32 {
        self.fq_add(a, self.fq_neg(b))
    }

    pub fn fq_inv(&self, a: u32) -> Result<u32, GfError> {
        if a == 0 {
            Err(GfError::DivisionByZero)
        } else {
            Ok(self.inv[a as usize])
        }
    }

    fn mul_raw(&self, a: &[u32; 3], b: &[u32; 3]) -> [u32; 3] {
        let mut d = [0u32; 5];
        for i in 0..3 {
            for j in 0..3 {
                d[i + j] = self.fq_add(d[i + j], self.fq_mul(a[i], b[j]));
            }
        }
        // u³ = -(m0 + m1 u + m2 u²)
        for deg in (3..5).rev() {
            let c = d[deg];
            if c != 0 {
                for i in 0..3 {
                    let t = self.fq_mul(c, self.ext_modulus[i]);
                    d[deg - 3 + i] = self.fq_sub(d[deg - 3 + i], t);
                }
                d[deg] = 0;
            }
        }
        [d[0], d[1], d[2]]
    }
}

/// Handle-carrying constructors for elements of `K`.
pub trait TowerExt {
    fn zero(&self) -> FieldElement;
    fn one(&self) -> FieldElement;
    /// The class `u` of the indeterminate, a root of the extension modulus.
    fn generator(&self) -> FieldElement;
    /// Embeds an `F_q` encoding into `K`.
    fn scalar(&self, c: u32) -> FieldElement;
    fn element(&self, coeffs: [u32; 3]) -> Result<FieldElement, GfError>;
    /// The element whose index (see [`FieldElement::index`]) is `n`.
    fn element_at(&self, n: u32) -> FieldElement;
    /// All `q³` elements in index order.
    fn elements(&self) -> Vec<FieldElement>;
}

impl TowerExt for Arc<FieldTower> {
    fn zero(&self) -> FieldElement {
        FieldElement::raw(self, [0, 0, 0])
    }

    fn one(&self) -> FieldElement {
        FieldElement::raw(self, [1, 0, 0])
    }

    fn generator(&self) -> FieldElement {
        FieldElement::raw(self, [0, 1, 0])
    }

    fn scalar(&self, c: u32) -> FieldElement {
        assert!(c < self.q, "scalar {c} out of range");
        FieldElement::raw(self, [c, 0, 0])
    }

    fn element(&self, coeffs: [u32; 3]) -> Result<FieldElement, GfError> {
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= self.q) {
            return Err(GfError::CoefficientRange {
                value: bad,
                q: self.q,
            });
        }
        Ok(FieldElement::raw(self, coeffs))
    }

    fn element_at(&self, n: u32) -> FieldElement {
        let q = self.q;
        assert!(n < q * q * q, "element index {n} out of range");
        FieldElement::raw(self, [n % q, (n / q) % q, n / (q * q)])
    }

    fn elements(&self) -> Vec<FieldElement> {
        (0..self.order()).map(|n| self.element_at(n)).collect()
    }
}

/// An element of `K = F_{q³}`.
#[derive(Clone)]
pub struct FieldElement {
    tower: Arc<FieldTower>,
    coeffs: [u32; 3],
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        same_tower(&self.tower, &other.tower) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

fn same_tower(a: &Arc<FieldTower>, b: &Arc<FieldTower>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl FieldElement {
    fn raw(tower: &Arc<FieldTower>, coeffs: [u32; 3]) -> Self {
        FieldElement {
            tower: Arc::clone(tower),
            coeffs,
        }
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    /// Coordinates over `F_q` in the basis `1, u, u²`.
    pub fn coeffs(&self) -> [u32; 3] {
        self.coeffs
    }

    /// `c0 + c1·q + c2·q²`, a bijection `K → 0..q³`.
    pub fn index(&self) -> u32 {
        let q = self.tower.q;
        self.coeffs[0] + q * (self.coeffs[1] + q * self.coeffs[2])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == [0, 0, 0]
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1, 0, 0]
    }

    /// True for elements of the subfield `F`.
    pub fn in_base_field(&self) -> bool {
        self.coeffs[1] == 0 && self.coeffs[2] == 0
    }

    /// The `F_q` encoding of an element of `F`, if it is one.
    pub fn as_scalar(&self) -> Option<u32> {
        self.in_base_field().then_some(self.coeffs[0])
    }

    fn check(&self, other: &Self) -> Result<(), GfError> {
        if same_tower(&self.tower, &other.tower) {
            Ok(())
        } else {
            Err(GfError::TowerMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, GfError> {
        self.check(other)?;
        let t = &self.tower;
        let c = std::array::from_fn(|i| t.fq_add(self.coeffs[i], other.coeffs[i]));
        Ok(Self::raw(t, c))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, GfError> {
        self.check(other)?;
        let t = &self.tower;
        let c = std::array::from_fn(|i| t.fq_sub(self.coeffs[i], other.coeffs[i]));
        Ok(Self::raw(t, c))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, GfError> {
        self.check(other)?;
        Ok(Self::raw(
            &self.tower,
            self.tower.mul_raw(&self.coeffs, &other.coeffs),
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, GfError> {
        self.check(other)?;
        Ok(self * &other.inv()?)
    }

    /// Multiplication by an `F_q` scalar given by its encoding.
    pub fn scale(&self, c: u32) -> Self {
        let t = &self.tower;
        Self::raw(t, self.coeffs.map(|x| t.fq_mul(c, x)))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut result = self.tower.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        result
    }

    /// Multiplicative inverse via `g^(Q-2)`.
    pub fn inv(&self) -> Result<Self, GfError> {
        if self.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.pow(self.tower.order() as u64 - 2))
    }

    /// `g^q`, the generator of `Gal(K/F)`.
    pub fn frobenius(&self) -> Self {
        self.pow(self.tower.q as u64)
    }

    /// `Tr(g) = g + g^q + g^{q²}`, an element of `F`.
    pub fn trace(&self) -> FieldElement {
        let f1 = self.frobenius();
        let f2 = f1.frobenius();
        let tr = &(self + &f1) + &f2;
        assert!(tr.in_base_field(), "trace left the base field");
        tr
    }

    /// The trace as an `F_q` encoding.
    pub fn trace_scalar(&self) -> u32 {
        self.trace().coeffs[0]
    }

    /// Minimal polynomial over `F`: the first `F`-linear dependency among
    /// `1, g, g², g³`.
    pub fn minimal_poly(&self) -> Result<MinimalPolynomial, GfError> {
        let t = &self.tower;
        let q = t.q;
        if self.in_base_field() {
            return Ok(MinimalPolynomial {
                coeffs: vec![t.fq_neg(self.coeffs[0]), 1],
            });
        }
        let powers = [t.one(), self.clone(), self * self, &(self * self) * self];
        // Looks for scalars c with g^d = sum_{i<d} c_i g^i.
        for d in 2..=3usize {
            for code in 0..q.pow(d as u32) {
                let cs: Vec<u32> = (0..d).map(|i| (code / q.pow(i as u32)) % q).collect();
                let combo = cs
                    .iter()
                    .zip(&powers)
                    .fold(t.zero(), |acc, (&c, pw)| &acc + &pw.scale(c));
                if combo == powers[d] {
                    if d == 2 {
                        return Err(GfError::InternalInconsistency(
                            "quadratic minimal polynomial in a cubic extension",
                        ));
                    }
                    let mut coeffs: Vec<u32> = cs.iter().map(|&c| t.fq_neg(c)).collect();
                    coeffs.push(1);
                    return Ok(MinimalPolynomial { coeffs });
                }
            }
        }
        Err(GfError::InternalInconsistency(
            "no dependency up to degree 3",
        ))
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field tower mismatch")
            }
        }
        impl std::ops::$trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$checked(&rhs).expect("field tower mismatch")
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let t = &self.tower;
        FieldElement::raw(t, self.coeffs.map(|c| t.fq_neg(c)))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "u".to_string(),
                (1, c) => format!("{c}u"),
                (_, 1) => "u^2".to_string(),
                (_, c) => format!("{c}u^2"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

/// Monic minimal polynomial over `F`, coefficients low-to-high as `F_q`
/// encodings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalPolynomial {
    coeffs: Vec<u32>,
}

impl MinimalPolynomial {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, g: &FieldElement) -> FieldElement {
        let t = g.tower();
        self.coeffs
            .iter()
            .rev()
            .fold(t.zero(), |acc, &c| &(&acc * g) + &t.scalar(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f8() -> Arc<FieldTower> {
        make_tower(2, 1).unwrap()
    }

    #[test]
    fn smallest_cubic_over_f2() {
        let t = f8();
        assert_eq!(t.q(), 2);
        assert_eq!(t.order(), 8);
        assert_eq!(t.ext_modulus(), [1, 1, 0, 1]);
        assert_eq!(t.base_modulus(), &[0, 1]);
    }

    #[test]
    fn orders() {
        assert_eq!(make_tower(3, 1).unwrap().order(), 27);
        let t4 = make_tower(2, 2).unwrap();
        assert_eq!((t4.q(), t4.order()), (4, 64));
        assert_eq!(t4.base_modulus(), &[1, 1, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            make_tower(4, 1).unwrap_err(),
            GfError::CompositeCharacteristic(4)
        );
        assert!(matches!(
            make_tower(2, 5),
            Err(GfError::SizeBound { q: 32, bound: 16 })
        ));
        assert!(matches!(make_tower(101, 1), Err(GfError::SizeBound { .. })));
        assert_eq!(make_tower(2, 0).unwrap_err(), GfError::ZeroDegree);
        assert_eq!(tower_for_order(6).unwrap_err(), GfError::NotPrimePower(6));
        assert!(make_tower_bounded(97, 1, 100).is_ok());
    }

    #[test]
    fn hand_reductions_in_f8() {
        let t = f8();
        let u = t.generator();
        let u2 = &u * &u;
        // u^4 = u·u^3 = u(u + 1) = u^2 + u
        assert_eq!(&u2 * &u2, t.element([0, 1, 1]).unwrap());
        assert_eq!(u.frobenius(), u2);
        assert!(u.trace().is_zero());
        assert_eq!(t.one().trace(), t.one());
        assert!(t.zero().trace().is_zero());
    }

    #[test]
    fn inverse_and_identity() {
        for t in [f8(), make_tower(5, 1).unwrap(), make_tower(2, 2).unwrap()] {
            for g in t.elements() {
                assert_eq!(&g + &t.zero(), g);
                if !g.is_zero() {
                    assert!((&g * &g.inv().unwrap()).is_one());
                }
            }
            assert_eq!(t.zero().inv().unwrap_err(), GfError::DivisionByZero);
        }
    }

    #[test]
    fn tower_mismatch_is_an_error() {
        let a = f8().one();
        let b = make_tower(3, 1).unwrap().one();
        assert_eq!(a.checked_add(&b).unwrap_err(), GfError::TowerMismatch);
        assert_eq!(a.checked_mul(&b).unwrap_err(), GfError::TowerMismatch);
        // Separately built towers with the same parameters are the same field.
        assert!(f8().one().checked_add(&a).is_ok());
    }

    #[test]
    fn minimal_polynomials() {
        let t = f8();
        assert_eq!(t.zero().minimal_poly().unwrap().coeffs(), &[0, 1]);
        assert_eq!(t.one().minimal_poly().unwrap().coeffs(), &[1, 1]);
        assert_eq!(
            t.generator().minimal_poly().unwrap().coeffs(),
            &[1, 1, 0, 1]
        );

        let t9 = make_tower(3, 2).unwrap();
        for g in t9.elements() {
            let m = g.minimal_poly().unwrap();
            assert!(m.eval(&g).is_zero());
            assert_eq!(m.degree(), if g.in_base_field() { 1 } else { 3 });
        }
    }

    #[test]
    fn frobenius_fixes_base_field_only() {
        let t = make_tower(2, 2).unwrap();
        for g in t.elements() {
            assert_eq!(g.frobenius() == g, g.in_base_field());
            assert_eq!(g.frobenius().frobenius().frobenius(), g);
        }
    }

    #[test]
    fn display() {
        let t = f8();
        assert_eq!(t.element([1, 0, 1]).unwrap().to_string(), "1+u^2");
        assert_eq!(t.zero().to_string(), "0");
    }
}
