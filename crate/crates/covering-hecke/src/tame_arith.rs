//! Tame arithmetic of a local field with residue size q = p^f.
//!
//! Elements of F^x are only ever needed modulo the principal units 1 + p_F,
//! so a field element is a pair (valuation, unit exponent mod q - 1) with
//! respect to a fixed uniformizer and a fixed generator gbar of the residue
//! field's multiplicative group. The degree-n tame symbol lands in mu_n,
//! realized inside the residue field as the exponents divisible by (q-1)/n.

use alloc::format;
use alloc::string::String;
use core::fmt;

use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// n must divide q - 1 for the tame symbol to be defined.
    DegreeNotDividing { n: i64, q: i64 },
    /// p must not divide n (tameness).
    WildDegree { p: i64, n: i64 },
    /// p must be prime, f and n positive.
    BadParameter(String),
    /// The value is not an n-th root of unity.
    NotRootOfUnity { exp: i64, n: i64 },
    /// A unit was required but the element has nonzero valuation.
    NotAUnit { valuation: i64 },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::DegreeNotDividing { n, q } => {
                write!(f, "n = {n} does not divide q - 1 = {}", q - 1)
            }
            FieldError::WildDegree { p, n } => write!(f, "p = {p} divides n = {n}"),
            FieldError::BadParameter(s) => write!(f, "bad field parameter: {s}"),
            FieldError::NotRootOfUnity { exp, n } => {
                write!(f, "exponent {exp} is not in mu_{n}")
            }
            FieldError::NotAUnit { valuation } => {
                write!(f, "element has valuation {valuation}, expected a unit")
            }
        }
    }
}

/// Residue data of a tame local field together with the covering degree n
/// and the configured embedding exponent for mu_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameField {
    p: i64,
    f: u32,
    q: i64,
    n: i64,
    /// eps sends the fixed generator zeta of mu_n to zeta^eps_exp.
    eps_exp: i64,
}

fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl TameField {
    pub fn new(p: i64, f: u32, n: i64) -> Result<Self, FieldError> {
        Self::with_embedding(p, f, n, 1)
    }

    pub fn with_embedding(p: i64, f: u32, n: i64, eps_exp: i64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::BadParameter(format!("p = {p} is not prime")));
        }
        if f == 0 || n < 1 {
            return Err(FieldError::BadParameter(format!("f = {f}, n = {n}")));
        }
        let q = p
            .checked_pow(f)
            .ok_or_else(|| FieldError::BadParameter(format!("q = {p}^{f} overflows")))?;
        if n % p == 0 {
            return Err(FieldError::WildDegree { p, n });
        }
        if (q - 1) % n != 0 {
            return Err(FieldError::DegreeNotDividing { n, q });
        }
        if linalg::gcd(eps_exp.rem_euclid(n.max(1)), n) != 1 && n > 1 {
            return Err(FieldError::BadParameter(format!(
                "embedding exponent {eps_exp} is not coprime to n = {n}"
            )));
        }
        Ok(TameField { p, f, q, n, eps_exp })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn qm1(&self) -> i64 {
        self.q - 1
    }

    pub fn eps_exp(&self) -> i64 {
        self.eps_exp
    }

    /// Generator exponent of mu_n inside the residue field: (q-1)/n.
    pub fn mu_n_step(&self) -> i64 {
        (self.q - 1) / self.n
    }

    pub fn reduce(&self, exp: i64) -> i64 {
        exp.rem_euclid(self.qm1().max(1))
    }

    /// The fixed embedding eps applied to a root of unity.
    pub fn eps(&self, zeta: RootOfUnity) -> Result<RootOfUnity, FieldError> {
        if self.reduce(zeta.exp * self.n) != 0 {
            return Err(FieldError::NotRootOfUnity {
                exp: zeta.exp,
                n: self.n,
            });
        }
        Ok(RootOfUnity {
            exp: self.reduce(zeta.exp * self.eps_exp),
        })
    }
}

/// Element of F^x / (1 + p_F): uniformizer power times unit-part exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FieldElt {
    pub valuation: i64,
    pub unit_exp: i64,
}

impl FieldElt {
    pub fn unit(field: &TameField, exp: i64) -> Self {
        FieldElt {
            valuation: 0,
            unit_exp: field.reduce(exp),
        }
    }

    pub fn uniformizer() -> Self {
        FieldElt {
            valuation: 1,
            unit_exp: 0,
        }
    }

    pub fn one() -> Self {
        FieldElt {
            valuation: 0,
            unit_exp: 0,
        }
    }

    pub fn minus_one(field: &TameField) -> Self {
        FieldElt {
            valuation: 0,
            unit_exp: Self::half(field),
        }
    }

    fn half(field: &TameField) -> i64 {
        // In characteristic 2 the residue field identifies -1 with 1.
        if field.p == 2 {
            0
        } else {
            (field.q - 1) / 2
        }
    }

    pub fn mul(&self, field: &TameField, other: &FieldElt) -> FieldElt {
        FieldElt {
            valuation: self.valuation + other.valuation,
            unit_exp: field.reduce(self.unit_exp + other.unit_exp),
        }
    }

    pub fn inv(&self, field: &TameField) -> FieldElt {
        FieldElt {
            valuation: -self.valuation,
            unit_exp: field.reduce(-self.unit_exp),
        }
    }

    pub fn pow(&self, field: &TameField, k: i64) -> FieldElt {
        FieldElt {
            valuation: self.valuation * k,
            unit_exp: field.reduce(self.unit_exp.wrapping_mul(field.reduce(k.rem_euclid(field.qm1())))),
        }
    }

    pub fn neg(&self, field: &TameField) -> FieldElt {
        FieldElt {
            valuation: self.valuation,
            unit_exp: field.reduce(self.unit_exp + Self::half(field)),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation == 0
    }
}

/// Root of unity inside the residue field, stored as a gbar-exponent mod q-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct RootOfUnity {
    pub exp: i64,
}

impl RootOfUnity {
    pub fn one() -> Self {
        RootOfUnity { exp: 0 }
    }

    pub fn new(field: &TameField, exp: i64) -> Self {
        RootOfUnity {
            exp: field.reduce(exp),
        }
    }

    pub fn mul(&self, field: &TameField, other: &RootOfUnity) -> RootOfUnity {
        RootOfUnity {
            exp: field.reduce(self.exp + other.exp),
        }
    }

    pub fn pow(&self, field: &TameField, k: i64) -> RootOfUnity {
        RootOfUnity {
            exp: field.reduce(self.exp * field.reduce(k.rem_euclid(field.qm1()))),
        }
    }

    pub fn inv(&self, field: &TameField) -> RootOfUnity {
        RootOfUnity {
            exp: field.reduce(-self.exp),
        }
    }

    pub fn in_mu_n(&self, field: &TameField) -> bool {
        field.reduce(self.exp * field.n) == 0
    }
}

/// Degree-n tame symbol
/// (a, b)_n = [(-1)^{v(a) v(b)} abar^{v(b)} bbar^{-v(a)}]^{(q-1)/n}.
pub fn hilbert(field: &TameField, a: &FieldElt, b: &FieldElt) -> RootOfUnity {
    let half = if field.p == 2 { 0 } else { (field.q - 1) / 2 };
    let bracket = field.reduce(
        field.reduce(a.valuation * b.valuation) * half
            + field.reduce(b.valuation) * a.unit_exp
            - field.reduce(a.valuation) * b.unit_exp,
    );
    RootOfUnity {
        exp: field.reduce(bracket * field.mu_n_step()),
    }
}

/// Evaluates the unit character with exponent vector weight `m` on a unit:
/// x = gbar^u gives gbar^{m u}.
pub fn unit_char_eval(field: &TameField, m: i64, x: &FieldElt) -> Result<RootOfUnity, FieldError> {
    if !x.is_unit() {
        return Err(FieldError::NotAUnit {
            valuation: x.valuation,
        });
    }
    Ok(RootOfUnity {
        exp: field.reduce(m * x.unit_exp),
    })
}
