//! Finite field arithmetic over GF(p^m) using discrete-log tables, and the
//! tower GF(q²) ⊂ GF(q^{2s}) on which every code in this crate lives.
//!
//! Elements are stored as an index into the antilog table: index `0` is the
//! zero element and index `i + 1` is `γ^i` for the primitive root `γ` of the
//! defining polynomial. Multiplication is a modular addition of logarithms;
//! addition goes through a Zech logarithm table.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::GfError;

/// Largest field order accepted by [`FieldCtx::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 24;

static BUNDLED_CONWAY: &str = include_str!("../data/conway.txt");

/// A field element, encoded as its antilog-table index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub const fn from_index(index: u32) -> Self {
        Elem(index)
    }

    #[inline]
    pub const fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Discrete logarithm w.r.t. the primitive element, `None` for zero.
    #[inline]
    pub const fn log(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0 - 1)
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(l) => write!(f, "g^{l}"),
        }
    }
}

/// Table of Conway polynomials, one `p m c0 c1 ... cm` row per line.
#[derive(Debug, Clone, Default)]
pub struct ConwayTable {
    rows: Vec<(u32, u32, Vec<u32>)>,
}

impl ConwayTable {
    pub fn parse(text: &str) -> Result<Self, GfError> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums: Result<Vec<u32>, _> = line.split_whitespace().map(str::parse).collect();
            let nums = nums.map_err(|e| GfError::TableParse {
                line: lineno + 1,
                msg: e.to_string(),
            })?;
            if nums.len() < 3 {
                return Err(GfError::TableParse {
                    line: lineno + 1,
                    msg: "expected `p m c0 ... cm`".into(),
                });
            }
            let (p, m) = (nums[0], nums[1]);
            let coeffs = nums[2..].to_vec();
            if coeffs.len() != m as usize + 1 {
                return Err(GfError::TableParse {
                    line: lineno + 1,
                    msg: format!("degree {m} needs {} coefficients, got {}", m + 1, coeffs.len()),
                });
            }
            rows.push((p, m, coeffs));
        }
        Ok(ConwayTable { rows })
    }

    /// The table shipped with the crate.
    pub fn bundled() -> &'static ConwayTable {
        static TABLE: OnceLock<ConwayTable> = OnceLock::new();
        TABLE.get_or_init(|| ConwayTable::parse(BUNDLED_CONWAY).expect("bundled Conway table is well-formed"))
    }

    pub fn lookup(&self, p: u32, m: u32) -> Option<&[u32]> {
        self.rows
            .iter()
            .find(|(rp, rm, _)| *rp == p && *rm == m)
            .map(|(_, _, c)| c.as_slice())
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, &[u32])> {
        self.rows.iter().map(|(p, m, c)| (*p, *m, c.as_slice()))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^r`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut r = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p as u32, r))
}

/// Exact arithmetic in GF(p^m).
pub struct FieldCtx {
    p: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    /// exponent -> vector form (base-p digits, constant term least significant)
    antilog: Vec<u32>,
    /// vector form -> exponent; entry 0 is unused
    log: Vec<u32>,
    /// zech[i] = element index of 1 + γ^i
    zech: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds GF(p^m). Without an explicit modulus the bundled Conway
    /// polynomial is used.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Self, GfError> {
        Self::with_table(p, m, modulus, ConwayTable::bundled())
    }

    pub fn with_table(p: u32, m: u32, modulus: Option<&[u32]>, table: &ConwayTable) -> Result<Self, GfError> {
        if !is_prime(p as u64) {
            return Err(GfError::NonPrime(p));
        }
        if m == 0 {
            return Err(GfError::BadModulus("extension degree must be positive".into()));
        }
        let order = (p as u64).checked_pow(m).filter(|&o| o <= MAX_FIELD_ORDER);
        let Some(order) = order else {
            return Err(GfError::FieldTooLarge { p, m });
        };
        let modulus = match modulus {
            Some(c) => c.to_vec(),
            None => table.lookup(p, m).ok_or(GfError::MissingConway { p, m })?.to_vec(),
        };
        let modulus = normalize_modulus(p, m, modulus)?;
        Self::from_monic(p, m, order as u32, modulus)
    }

    fn from_monic(p: u32, m: u32, order: u32, modulus: Vec<u32>) -> Result<Self, GfError> {
        let mult_order = order - 1;
        let mut antilog = vec![0u32; mult_order as usize];
        let mut log = vec![u32::MAX; order as usize];
        let mut digits = vec![0u32; m as usize];
        digits[0] = 1;
        for i in 0..mult_order {
            let v = encode(p, &digits);
            if log[v as usize] != u32::MAX {
                return Err(classify_failure(p, m, &modulus));
            }
            log[v as usize] = i;
            antilog[i as usize] = v;
            mul_by_x(p, &mut digits, &modulus);
        }
        if encode(p, &digits) != 1 {
            return Err(classify_failure(p, m, &modulus));
        }
        let zech = antilog
            .iter()
            .map(|&v| {
                let d0 = v % p;
                let w = v - d0 + (d0 + 1) % p;
                if w == 0 {
                    0
                } else {
                    log[w as usize] + 1
                }
            })
            .collect();
        Ok(FieldCtx {
            p,
            m,
            order,
            modulus,
            antilog,
            log,
            zech,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients of the defining polynomial, ascending degree, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn antilog_table(&self) -> &[u32] {
        &self.antilog
    }

    pub fn log_table(&self) -> &[u32] {
        &self.log
    }

    #[inline]
    fn mult_order(&self) -> u32 {
        self.order - 1
    }

    /// The primitive element (root of the modulus).
    pub fn primitive(&self) -> Elem {
        if self.order == 2 {
            Elem::ONE
        } else {
            Elem(2)
        }
    }

    /// Iterates every element, zero first, in index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    pub fn is_valid(&self, a: Elem) -> bool {
        a.0 < self.order
    }

    /// `γ^e` for any integer exponent.
    #[inline]
    pub fn exp(&self, e: i64) -> Elem {
        let n = self.mult_order() as i64;
        Elem(e.rem_euclid(n) as u32 + 1)
    }

    /// Element whose vector form (base-p digit string) is `v`.
    pub fn from_vector(&self, v: u32) -> Elem {
        assert!(v < self.order, "vector form out of range");
        if v == 0 {
            Elem::ZERO
        } else {
            Elem(self.log[v as usize] + 1)
        }
    }

    pub fn to_vector(&self, a: Elem) -> u32 {
        match a.log() {
            None => 0,
            Some(l) => self.antilog[l as usize],
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        self.from_vector(n.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let n = self.mult_order();
        let s = (a.0 - 1) + (b.0 - 1);
        Elem(if s >= n { s - n } else { s } + 1)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let n = self.mult_order();
        let (i, j) = (a.0 - 1, b.0 - 1);
        let d = if j >= i { j - i } else { j + n - i };
        let z = self.zech[d as usize];
        if z == 0 {
            Elem::ZERO
        } else {
            self.mul(a, Elem(z))
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a.0 == 0 {
            a
        } else {
            // -1 = γ^{(Q-1)/2}
            self.mul(a, Elem(self.mult_order() / 2 + 1))
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, GfError> {
        match a.log() {
            None => Err(GfError::DivisionByZero),
            Some(0) => Ok(Elem::ONE),
            Some(l) => Ok(Elem(self.mult_order() - l + 1)),
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    #[inline]
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        match a.log() {
            None => Elem::ZERO,
            Some(l) => {
                let n = self.mult_order() as u64;
                Elem(((l as u64 * (e % n)) % n) as u32 + 1)
            }
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order_of(&self, a: Elem) -> Option<u64> {
        let l = a.log()? as u64;
        let n = self.mult_order() as u64;
        Some(n / gcd(n, l))
    }

    /// Sum of a sequence of elements.
    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }
}

fn normalize_modulus(p: u32, m: u32, coeffs: Vec<u32>) -> Result<Vec<u32>, GfError> {
    if coeffs.len() != m as usize + 1 {
        return Err(GfError::BadModulus(format!(
            "degree-{m} modulus needs {} coefficients, got {}",
            m + 1,
            coeffs.len()
        )));
    }
    if let Some(&c) = coeffs.iter().find(|&&c| c >= p) {
        return Err(GfError::BadModulus(format!("coefficient {c} not reduced mod {p}")));
    }
    let lead = coeffs[m as usize];
    if lead == 0 {
        return Err(GfError::BadModulus("leading coefficient is zero".into()));
    }
    let inv = mod_inverse(lead as u64, p as u64).expect("p prime") as u32;
    Ok(coeffs.into_iter().map(|c| c * inv % p).collect())
}

fn encode(p: u32, digits: &[u32]) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// digits <- digits * x mod (monic) modulus
fn mul_by_x(p: u32, digits: &mut [u32], modulus: &[u32]) {
    let m = digits.len();
    let top = digits[m - 1];
    for i in (1..m).rev() {
        digits[i] = digits[i - 1];
    }
    digits[0] = 0;
    if top != 0 {
        for (d, &c) in digits.iter_mut().zip(modulus) {
            *d = (*d + p - (top * c) % p) % p;
        }
    }
}

fn classify_failure(p: u32, m: u32, modulus: &[u32]) -> GfError {
    if is_irreducible(p, m, modulus) {
        GfError::NonPrimitiveModulus
    } else {
        GfError::ReducibleModulus
    }
}

/// Trial division by every monic polynomial of degree <= m/2.
fn is_irreducible(p: u32, m: u32, modulus: &[u32]) -> bool {
    if modulus[0] == 0 {
        return m == 1;
    }
    for deg in 1..=m / 2 {
        let count = (p as u64).pow(deg);
        for low in 0..count {
            let mut divisor = Vec::with_capacity(deg as usize + 1);
            let mut rest = low;
            for _ in 0..deg {
                divisor.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            divisor.push(1);
            if poly_rem_is_zero(p, modulus, &divisor) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(p: u32, num: &[u32], monic_div: &[u32]) -> bool {
    let mut r = num.to_vec();
    let dd = monic_div.len() - 1;
    for top in (dd..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for (k, &dc) in monic_div.iter().enumerate() {
            let idx = top - dd + k;
            r[idx] = (r[idx] + p - (c * dc) % p) % p;
        }
    }
    r.iter().all(|&c| c == 0)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % n as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(n as i128) as u64)
}

/// GF(q²) ⊂ GF(q^{2s}), with the big field's Conway root as `γ`.
#[derive(Debug)]
pub struct FieldTower {
    big: Arc<FieldCtx>,
    small: Arc<FieldCtx>,
    q: u32,
    s: u32,
    /// (q^{2s} - 1) / (q² - 1): log-stride of the embedded subfield
    stride: u32,
}

impl FieldTower {
    pub fn new(q: u32, s: u32) -> Result<Self, GfError> {
        Self::with_table(q, s, ConwayTable::bundled())
    }

    pub fn with_table(q: u32, s: u32, table: &ConwayTable) -> Result<Self, GfError> {
        let (p, r) = prime_power(q as u64).ok_or(GfError::NotPrimePower(q))?;
        if s == 0 {
            return Err(GfError::BadModulus("tower parameter s must be positive".into()));
        }
        let small = FieldCtx::with_table(p, 2 * r, None, table)?;
        let big = FieldCtx::with_table(p, 2 * r * s, None, table)?;
        let stride = (big.order() - 1) / (small.order() - 1);
        Ok(FieldTower {
            big: Arc::new(big),
            small: Arc::new(small),
            q,
            s,
            stride,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn big(&self) -> &Arc<FieldCtx> {
        &self.big
    }

    pub fn small(&self) -> &Arc<FieldCtx> {
        &self.small
    }

    pub fn gamma(&self) -> Elem {
        self.big.primitive()
    }

    /// q^{2s} - 1
    pub fn big_mult_order(&self) -> u64 {
        self.big.order() as u64 - 1
    }

    pub fn embed(&self, x: Elem) -> Elem {
        match x.log() {
            None => Elem::ZERO,
            Some(l) => Elem(l * self.stride + 1),
        }
    }

    /// Inverse of [`embed`](Self::embed); `None` if `x` is outside the subfield.
    pub fn restrict(&self, x: Elem) -> Option<Elem> {
        match x.log() {
            None => Some(Elem::ZERO),
            Some(l) if l % self.stride == 0 => Some(Elem(l / self.stride + 1)),
            Some(_) => None,
        }
    }

    pub fn in_subfield(&self, x: Elem) -> bool {
        self.restrict(x).is_some()
    }

    /// `x^{(q²)^j}`.
    pub fn frobenius(&self, x: Elem, j: u32) -> Elem {
        let n = self.big_mult_order();
        let e = pow_mod(self.q as u64 * self.q as u64, j as u64, n);
        // exponent taken mod n; q^{2j} mod n is never 0 for n > 1
        self.big.pow(x, if e == 0 { n } else { e })
    }

    /// `x + x^{q²} + ... + x^{q^{2(s-1)}}`.
    pub fn trace_to_small(&self, x: Elem) -> Elem {
        self.big.sum((0..self.s).map(|j| self.frobenius(x, j)))
    }

    /// Primitive `n1`-th root of unity `γ^{(q^{2s}-1)/n1}`.
    pub fn root_of_unity(&self, n1: u64) -> Result<Elem, GfError> {
        let n = self.big_mult_order();
        if n1 == 0 || !n.is_multiple_of(n1) {
            return Err(GfError::NotADivisor { n: n1, order: n });
        }
        Ok(self.big.exp((n / n1) as i64))
    }
}

pub(crate) fn pow_mod(base: u64, mut e: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let mut b = base as u128 % n as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % n as u128;
        }
        b = b * b % n as u128;
        e >>= 1;
    }
    acc as u64
}
