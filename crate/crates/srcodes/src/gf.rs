//! Arithmetic in small binary extension fields GF(2^k), k <= 8.
//!
//! GF(4) is the workhorse field and gets a dedicated table-driven value type,
//! [`Gf4`]. The larger fields (GF(16), GF(64), GF(256)) appear as syndrome
//! fields when decoding BCH codes over GF(4); they are handled by
//! [`FieldCtx`], which owns log/antilog tables for one canonical primitive
//! modulus per degree.
//!
//! Elements are bit-vectors in the polynomial basis {1, a, ..., a^(k-1)},
//! bit 0 being the constant term. For GF(4) the basis is {1, w} with
//! w^2 = w + 1, so the four values are 0, 1, 2 = w and 3 = w^2.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use thiserror::Error;

/// Errors from field construction and checked element arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("extension degree {0} out of range (1..=8)")]
    DegreeOutOfRange(usize),
    #[error("modulus {0:#b} is not an irreducible polynomial of degree {1}")]
    ReducibleModulus(u16, usize),
    #[error("modulus {0:#b} is irreducible but not primitive")]
    NonPrimitiveModulus(u16),
    #[error("element value {value} out of range for GF(2^{k})")]
    ElementOutOfRange { value: u8, k: usize },
    #[error("operands live in different field contexts: GF(2^{0}) vs GF(2^{1})")]
    ContextMismatch(usize, usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no embedding of GF(2^{0}) into GF(2^{1}): degrees do not divide")]
    UnsupportedEmbedding(usize, usize),
    #[error("cannot parse {0:?} as a field element")]
    ParseElem(String),
}

// ---------------------------------------------------------------------------
// GF(4)
// ---------------------------------------------------------------------------

/// An element of the canonical GF(4) = GF(2)[x] / (x^2 + x + 1).
///
/// Values 0..4 in the basis {1, w}: `0`, `1`, `2` = w, `3` = w^2 = 1 + w.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Gf4(u8);

const GF4_MUL: [[u8; 4]; 4] = [
    [0, 0, 0, 0],
    [0, 1, 2, 3],
    [0, 2, 3, 1], // w * w = w^2, w * w^2 = w^3 = 1
    [0, 3, 1, 2],
];

const GF4_INV: [u8; 4] = [0, 1, 3, 2];

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    /// The generator w with w^2 = w + 1 and w^3 = 1.
    pub const W: Gf4 = Gf4(2);
    /// w^2 = 1 + w.
    pub const W2: Gf4 = Gf4(3);

    /// Wraps a raw value 0..4.
    pub fn new(value: u8) -> Gf4 {
        assert!(value < 4, "GF(4) value out of range: {value}");
        Gf4(value)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// All four elements, in value order.
    pub fn all() -> [Gf4; 4] {
        [Gf4(0), Gf4(1), Gf4(2), Gf4(3)]
    }

    /// The three nonzero elements 1, w, w^2.
    pub fn nonzero() -> [Gf4; 3] {
        [Gf4(1), Gf4(2), Gf4(3)]
    }

    /// Multiplicative inverse. Panics on zero; use [`Gf4::checked_inv`]
    /// when the operand may be zero.
    pub fn inv(self) -> Gf4 {
        assert!(self.0 != 0, "inverse of zero in GF(4)");
        Gf4(GF4_INV[self.0 as usize])
    }

    pub fn checked_inv(self) -> Option<Gf4> {
        (self.0 != 0).then(|| Gf4(GF4_INV[self.0 as usize]))
    }

    /// The Frobenius automorphism x -> x^2 (fixes GF(2), swaps w and w^2).
    pub fn frobenius(self) -> Gf4 {
        self * self
    }
}

impl std::ops::Add for Gf4 {
    type Output = Gf4;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for Gf4 {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Gf4) {
        self.0 ^= rhs.0;
    }
}

// Characteristic 2: subtraction is addition.
impl std::ops::Sub for Gf4 {
    type Output = Gf4;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Gf4) -> Gf4 {
        self + rhs
    }
}

impl std::ops::Mul for Gf4 {
    type Output = Gf4;
    fn mul(self, rhs: Gf4) -> Gf4 {
        Gf4(GF4_MUL[self.0 as usize][rhs.0 as usize])
    }
}

impl std::ops::MulAssign for Gf4 {
    fn mul_assign(&mut self, rhs: Gf4) {
        *self = *self * rhs;
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "0",
            1 => "1",
            2 => "w",
            _ => "w2",
        })
    }
}

impl FromStr for Gf4 {
    type Err = GfError;
    fn from_str(s: &str) -> Result<Gf4, GfError> {
        match s {
            "0" => Ok(Gf4(0)),
            "1" => Ok(Gf4(1)),
            "w" => Ok(Gf4(2)),
            "w2" => Ok(Gf4(3)),
            other => Err(GfError::ParseElem(other.to_string())),
        }
    }
}

/// Parses a whitespace- or comma-separated list of GF(4) symbols.
pub fn parse_gf4_vec(s: &str) -> Result<Vec<Gf4>, GfError> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|tok| !tok.is_empty())
        .map(Gf4::from_str)
        .collect()
}

/// Formats a GF(4) vector with the given separator.
pub fn format_gf4_vec(v: &[Gf4], sep: &str) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

// ---------------------------------------------------------------------------
// Generic GF(2^k)
// ---------------------------------------------------------------------------

/// Canonical primitive moduli, indexed by degree. Bit j is the coefficient
/// of x^j; every entry is verified (irreducible and primitive) when the
/// context is built.
const CANONICAL_MODULI: [u16; 9] = [
    0,
    0b11,        // x + 1
    0b111,       // x^2 + x + 1
    0b1011,      // x^3 + x + 1
    0b10011,     // x^4 + x + 1
    0b100101,    // x^5 + x^2 + 1
    0b1000011,   // x^6 + x + 1
    0b10001001,  // x^7 + x^3 + 1
    0b100011101, // x^8 + x^4 + x^3 + x^2 + 1
];

/// A binary extension field GF(2^k) with eagerly built log/antilog tables.
///
/// Contexts are immutable after construction; all operations are pure and
/// safe to share across threads. The raw-value operations (`mul`, `inv`,
/// ...) act on `u8` values already known to belong to this field; the
/// checked [`FieldElem`] API is the safe surface for callers mixing fields.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    k: usize,
    modulus: u16,
    exp: Vec<u8>,
    log: Vec<u8>,
}

impl FieldCtx {
    /// Builds GF(2^k) from an explicit modulus, verifying that the modulus
    /// is irreducible of degree exactly k and primitive (so the antilog
    /// table has period 2^k - 1).
    pub fn new(k: usize, modulus: u16) -> Result<FieldCtx, GfError> {
        if !(1..=8).contains(&k) {
            return Err(GfError::DegreeOutOfRange(k));
        }
        if modulus >> k != 1 {
            return Err(GfError::ReducibleModulus(modulus, k));
        }
        if !poly2_is_irreducible(modulus, k) {
            return Err(GfError::ReducibleModulus(modulus, k));
        }
        let order = (1usize << k) - 1;
        let mut exp = vec![0u8; order];
        let mut log = vec![0u8; 1 << k];
        let mut e: u16 = 1;
        for (i, slot) in exp.iter_mut().enumerate() {
            if i > 0 && e == 1 {
                return Err(GfError::NonPrimitiveModulus(modulus));
            }
            *slot = e as u8;
            log[e as usize] = i as u8;
            e <<= 1;
            if e >> k == 1 {
                e ^= modulus;
            }
        }
        if e != 1 {
            return Err(GfError::NonPrimitiveModulus(modulus));
        }
        Ok(FieldCtx { k, modulus, exp, log })
    }

    /// The canonical GF(2^k) context (fixed modulus per degree).
    pub fn canonical(k: usize) -> &'static FieldCtx {
        static CTXS: OnceLock<Vec<FieldCtx>> = OnceLock::new();
        let ctxs = CTXS.get_or_init(|| {
            (1..=8)
                .map(|k| FieldCtx::new(k, CANONICAL_MODULI[k]).expect("canonical modulus"))
                .collect()
        });
        assert!((1..=8).contains(&k), "degree {k} out of range");
        &ctxs[k - 1]
    }

    /// The canonical GF(4) context.
    pub fn gf4() -> &'static FieldCtx {
        FieldCtx::canonical(2)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> u16 {
        self.modulus
    }

    /// Number of field elements, 2^k.
    pub fn size(&self) -> usize {
        1 << self.k
    }

    /// Order of the multiplicative group, 2^k - 1.
    pub fn order(&self) -> usize {
        (1 << self.k) - 1
    }

    /// Wraps a raw value as a checked element of this field.
    pub fn elem(&self, value: u8) -> Result<FieldElem, GfError> {
        if (value as usize) < self.size() {
            Ok(FieldElem { value, k: self.k as u8 })
        } else {
            Err(GfError::ElementOutOfRange { value, k: self.k })
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { value: 0, k: self.k as u8 }
    }

    pub fn one(&self) -> FieldElem {
        FieldElem { value: 1, k: self.k as u8 }
    }

    /// The fixed generator x of the multiplicative group.
    pub fn generator(&self) -> FieldElem {
        FieldElem { value: self.exp[1 % self.order()], k: self.k as u8 }
    }

    // Raw-value arithmetic. Values must already belong to this field.

    pub fn add(&self, a: u8, b: u8) -> u8 {
        debug_assert!((a as usize) < self.size() && (b as usize) < self.size());
        a ^ b
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        debug_assert!((a as usize) < self.size() && (b as usize) < self.size());
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] as usize + self.log[b as usize] as usize)
                % self.order()]
        }
    }

    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero");
        self.exp[(self.order() - self.log[a as usize] as usize) % self.order()]
    }

    pub fn div(&self, a: u8, b: u8) -> u8 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u8, e: usize) -> u8 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        self.exp[(self.log[a as usize] as usize * e) % self.order()]
    }

    /// x^i for the fixed generator x; the exponent is reduced mod 2^k - 1.
    pub fn exp_at(&self, i: usize) -> u8 {
        self.exp[i % self.order()]
    }

    /// Discrete log of a nonzero element.
    pub fn log_of(&self, a: u8) -> usize {
        assert!(a != 0, "log of zero");
        self.log[a as usize] as usize
    }

    /// Parses an element in the textual notation: GF(4) uses `0 1 w w2`,
    /// larger fields use the hex digits of the bit-vector.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem, GfError> {
        if self.k == 2 {
            let g: Gf4 = s.parse()?;
            return self.elem(g.value());
        }
        let value =
            u8::from_str_radix(s, 16).map_err(|_| GfError::ParseElem(s.to_string()))?;
        self.elem(value)
    }
}

/// True if the degree-k polynomial over GF(2) has no factor of degree
/// 1..=k/2 (exhaustive trial division).
fn poly2_is_irreducible(modulus: u16, k: usize) -> bool {
    if k == 1 {
        return true;
    }
    for d in 1..=k / 2 {
        for f in (1u16 << d)..(1u16 << (d + 1)) {
            if poly2_rem(modulus as u32, f) == 0 {
                return false;
            }
        }
    }
    true
}

/// Remainder of polynomial division over GF(2).
fn poly2_rem(mut a: u32, b: u16) -> u32 {
    let db = 15 - b.leading_zeros() as i32;
    loop {
        let da = 31 - (a | 1).leading_zeros() as i32;
        if a == 0 || da < db {
            return a;
        }
        a ^= (b as u32) << (da - db);
    }
}

/// An element tagged with its field context (one canonical context per
/// degree, so the degree identifies the context).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u8,
    k: u8,
}

impl FieldElem {
    pub fn value(self) -> u8 {
        self.value
    }

    pub fn degree(self) -> usize {
        self.k as usize
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn ctx(self) -> &'static FieldCtx {
        FieldCtx::canonical(self.k as usize)
    }
}

impl From<Gf4> for FieldElem {
    fn from(g: Gf4) -> FieldElem {
        FieldElem { value: g.value(), k: 2 }
    }
}

impl TryFrom<FieldElem> for Gf4 {
    type Error = GfError;
    fn try_from(e: FieldElem) -> Result<Gf4, GfError> {
        if e.k == 2 {
            Ok(Gf4::new(e.value))
        } else {
            Err(GfError::ContextMismatch(e.k as usize, 2))
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 2 {
            write!(f, "{}", Gf4::new(self.value))
        } else {
            write!(f, "{:x}", self.value)
        }
    }
}

fn same_ctx(a: FieldElem, b: FieldElem) -> Result<&'static FieldCtx, GfError> {
    if a.k != b.k {
        return Err(GfError::ContextMismatch(a.k as usize, b.k as usize));
    }
    Ok(FieldCtx::canonical(a.k as usize))
}

/// Checked addition: coordinatewise XOR of the basis representations.
pub fn add(a: FieldElem, b: FieldElem) -> Result<FieldElem, GfError> {
    let ctx = same_ctx(a, b)?;
    ctx.elem(a.value ^ b.value)
}

/// Checked multiplication through the log/antilog tables.
pub fn mul(a: FieldElem, b: FieldElem) -> Result<FieldElem, GfError> {
    let ctx = same_ctx(a, b)?;
    ctx.elem(ctx.mul(a.value, b.value))
}

/// Checked multiplicative inverse.
pub fn inv(a: FieldElem) -> Result<FieldElem, GfError> {
    if a.value == 0 {
        return Err(GfError::DivisionByZero);
    }
    let ctx = a.ctx();
    ctx.elem(ctx.inv(a.value))
}

/// The Frobenius automorphism x -> x^2.
pub fn frobenius(a: FieldElem) -> FieldElem {
    let ctx = a.ctx();
    FieldElem { value: ctx.mul(a.value, a.value), k: a.k }
}

// ---------------------------------------------------------------------------
// Subfield embeddings
// ---------------------------------------------------------------------------

/// A field homomorphism GF(2^s) -> GF(2^t) for s | t, realized as a lookup
/// table. The image of the subfield generator is the root of the subfield
/// modulus in the big field with the smallest discrete log, which makes the
/// embedding deterministic; for GF(4) -> GF(16) this sends w to b^5 where b
/// generates GF(16)*.
#[derive(Debug, Clone)]
pub struct Embedding {
    from_k: usize,
    to_k: usize,
    table: Vec<u8>,
}

impl Embedding {
    pub fn new(from: &FieldCtx, to: &FieldCtx) -> Result<Embedding, GfError> {
        if !to.k.is_multiple_of(from.k) {
            return Err(GfError::UnsupportedEmbedding(from.k, to.k));
        }
        // Root of the subfield modulus in the big field, smallest log first.
        let root = (0..to.order())
            .map(|i| to.exp_at(i))
            .find(|&z| {
                let mut acc = 0u8;
                for j in 0..=from.k {
                    if from.modulus >> j & 1 == 1 {
                        acc = to.add(acc, to.pow(z, j));
                    }
                }
                acc == 0
            })
            .expect("subfield modulus has a root in the extension");
        let mut powers = vec![1u8; from.k];
        for j in 1..from.k {
            powers[j] = to.mul(powers[j - 1], root);
        }
        let table = (0..from.size() as u16)
            .map(|a| {
                let mut acc = 0u8;
                for (j, p) in powers.iter().enumerate() {
                    if a >> j & 1 == 1 {
                        acc = to.add(acc, *p);
                    }
                }
                acc
            })
            .collect();
        Ok(Embedding { from_k: from.k, to_k: to.k, table })
    }

    pub fn apply_raw(&self, a: u8) -> u8 {
        self.table[a as usize]
    }

    pub fn apply(&self, a: FieldElem) -> Result<FieldElem, GfError> {
        if a.k as usize != self.from_k {
            return Err(GfError::ContextMismatch(a.k as usize, self.from_k));
        }
        FieldCtx::canonical(self.to_k).elem(self.table[a.value as usize])
    }

    /// Inverse image of a big-field value, if it lies in the embedded copy
    /// of the subfield.
    pub fn retract_raw(&self, v: u8) -> Option<u8> {
        self.table.iter().position(|&t| t == v).map(|i| i as u8)
    }
}

/// Checked embedding of a single element; builds the lookup table on the
/// fly (fields are tiny). Use [`Embedding`] directly for batch work.
pub fn embed(a: FieldElem, from: &FieldCtx, to: &FieldCtx) -> Result<FieldElem, GfError> {
    if a.k as usize != from.k {
        return Err(GfError::ContextMismatch(a.k as usize, from.k));
    }
    Embedding::new(from, to)?.apply(a)
}
