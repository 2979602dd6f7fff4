//! Evaluation codes on roots of unity and on homothetic point sets, their
//! subfield-subcodes over GF(q²), puncturing, Hermitian duals, and
//! exhaustive minimum distance for tiny codes.

use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cosets::{DefiningSet, DefiningSetSummary};
use crate::error::CodeError;
use crate::gf::{Elem, FieldCtx, FieldTower};
use crate::linalg::Matrix;

/// Enumeration budget for [`min_distance_exhaustive`].
pub const MAX_ENUMERATED_WORDS: f64 = (1u64 << 30) as f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointKind {
    /// U(N): the N-th roots of unity.
    RootsOfUnity { n: u64 },
    /// ∪_{t<λ} γ^t · U(n₁)
    Homothetic { n1: u64, lambda: u64 },
}

/// Ordered evaluation points in the big field of a tower.
#[derive(Debug, Clone)]
pub struct PointSet {
    tower: Arc<FieldTower>,
    kind: PointKind,
    points: Vec<Elem>,
}

impl PointSet {
    /// `P = {γ^t ζ^i : 0 ≤ t < λ, 0 ≤ i < n₁}` in block order. With λ = 1
    /// this is U(n₁).
    pub fn homothetic(tower: Arc<FieldTower>, n1: u64, lambda: u64) -> Result<Self, CodeError> {
        let order = tower.big_mult_order();
        let zeta = tower.root_of_unity(n1)?;
        let max = order / n1;
        if lambda == 0 || lambda > max {
            return Err(CodeError::LambdaTooLarge { lambda, max });
        }
        let big = tower.big();
        let gamma = tower.gamma();
        let mut points = Vec::with_capacity((lambda * n1) as usize);
        let mut shift = Elem::ONE;
        for _ in 0..lambda {
            let mut z = shift;
            for _ in 0..n1 {
                points.push(z);
                z = big.mul(z, zeta);
            }
            shift = big.mul(shift, gamma);
        }
        let kind = if lambda == 1 {
            PointKind::RootsOfUnity { n: n1 }
        } else {
            PointKind::Homothetic { n1, lambda }
        };
        Ok(PointSet { tower, kind, points })
    }

    pub fn roots_of_unity(tower: Arc<FieldTower>, n: u64) -> Result<Self, CodeError> {
        Self::homothetic(tower, n, 1)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn kind(&self) -> PointKind {
        self.kind
    }

    pub fn points(&self) -> &[Elem] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// n₁ (the roots-of-unity block length).
    pub fn block_len(&self) -> u64 {
        match self.kind {
            PointKind::RootsOfUnity { n } => n,
            PointKind::Homothetic { n1, .. } => n1,
        }
    }

    /// λ (the number of homothetic blocks).
    pub fn blocks(&self) -> u64 {
        match self.kind {
            PointKind::RootsOfUnity { .. } => 1,
            PointKind::Homothetic { lambda, .. } => lambda,
        }
    }

    /// False when λn₁ divides q^{2s}−1, i.e. the length is reachable by a
    /// plain roots-of-unity code.
    pub fn is_proper_homothetic(&self) -> bool {
        let n = self.blocks() * self.block_len();
        self.blocks() > 1 && !self.tower.big_mult_order().is_multiple_of(n)
    }

    /// `ev(X^e)` with `e` read as an integer exponent.
    pub fn evaluate_monomial(&self, e: u64) -> Vec<Elem> {
        let big = self.tower.big();
        self.points.iter().map(|&a| big.pow(a, e)).collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeMeta {
    pub construction: String,
    pub defining_set: Option<DefiningSetSummary>,
    pub points: Option<PointKind>,
}

impl CodeMeta {
    pub fn named(construction: impl Into<String>) -> Self {
        CodeMeta {
            construction: construction.into(),
            ..Default::default()
        }
    }
}

/// A linear code given by a generator matrix kept in reduced row echelon
/// form, so that equal codes have equal generator matrices.
#[derive(Debug, Clone)]
pub struct LinearCode {
    field: Arc<FieldCtx>,
    gen: Matrix,
    meta: CodeMeta,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.gen == other.gen
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    /// Row space of `rows`; rows are reduced and zero rows dropped.
    pub fn from_generators(field: Arc<FieldCtx>, mut rows: Matrix, meta: CodeMeta) -> Self {
        rows.rref(&field);
        LinearCode { field, gen: rows, meta }
    }

    pub fn zero(field: Arc<FieldCtx>, n: usize) -> Self {
        LinearCode {
            field,
            gen: Matrix::zeros(0, n),
            meta: CodeMeta::named("zero"),
        }
    }

    pub fn full(field: Arc<FieldCtx>, n: usize) -> Self {
        LinearCode {
            field,
            gen: Matrix::identity(n),
            meta: CodeMeta::named("full"),
        }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn meta(&self) -> &CodeMeta {
        &self.meta
    }

    pub fn with_meta(mut self, meta: CodeMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn len(&self) -> usize {
        self.gen.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.gen.cols() == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    /// Whether `word` lies in the code.
    pub fn contains(&self, word: &[Elem]) -> bool {
        let mut m = self.gen.clone();
        m.push_row(word);
        m.rank(&self.field) == self.dim()
    }

    /// Euclidean dual: {x : G xᵀ = 0}.
    pub fn euclidean_dual(&self) -> LinearCode {
        let k = self.gen.kernel(&self.field);
        LinearCode::from_generators(self.field.clone(), k, CodeMeta::named("euclidean dual"))
    }

    /// Text form: header `q2 n k`, then one line of element indices per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.field.order(), self.len(), self.dim());
        for row in self.gen.iter_rows() {
            let line: Vec<String> = row.iter().map(|e| e.index().to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Parses [`to_text`](Self::to_text) output over the given alphabet.
    pub fn from_text(field: Arc<FieldCtx>, text: &str) -> Result<Self, CodeError> {
        let bad = |m: &str| CodeError::Parse(m.to_string());
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<usize> = lines
            .next()
            .ok_or_else(|| bad("missing header"))?
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| bad("header is not numeric"))?;
        let [order, n, k] = header[..] else {
            return Err(bad("header must be `q2 n k`"));
        };
        if order != field.order() as usize {
            return Err(bad("alphabet size mismatch"));
        }
        let mut gen = Matrix::zeros(0, n);
        for line in lines {
            let row: Vec<Elem> = line
                .split_whitespace()
                .map(|t| t.parse::<u32>().map(Elem::from_index))
                .collect::<Result<_, _>>()
                .map_err(|_| bad("row entry is not numeric"))?;
            if row.len() != n || row.iter().any(|&e| !field.is_valid(e)) {
                return Err(bad("row has wrong length or invalid element"));
            }
            gen.push_row(&row);
        }
        if gen.rows() != k {
            return Err(bad("row count does not match header"));
        }
        Ok(LinearCode::from_generators(field, gen, CodeMeta::named("parsed")))
    }
}

/// Span of `ev_P(X^e)` for `e ∈ Δ`, over the big field.
pub fn evaluation_code(points: &PointSet, delta: &DefiningSet) -> LinearCode {
    let n = points.len();
    let mut gen = Matrix::zeros(0, n);
    for &e in delta.elements() {
        gen.push_row(&points.evaluate_monomial(e as u64));
    }
    let meta = CodeMeta {
        construction: "evaluation".into(),
        defining_set: Some(delta.into()),
        points: Some(points.kind()),
    };
    LinearCode::from_generators(points.tower().big().clone(), gen, meta)
}

/// `C ∩ GF(q²)ⁿ`, computed by scalar restriction of the parity checks.
///
/// A word `c ∈ GF(q²)ⁿ` satisfies `Σ hᵢcᵢ = 0` iff `Σ Tr(b·hᵢ)cᵢ = 0` for all
/// `b` in a GF(q²)-basis of GF(q^{2s}), by nondegeneracy of the trace form.
pub fn subfield_subcode(code: &LinearCode, tower: &FieldTower) -> Result<LinearCode, CodeError> {
    if **code.field() != **tower.big() {
        return Err(CodeError::AlphabetMismatch);
    }
    let big = tower.big();
    let n = code.len();
    let checks = code.generator().kernel(big);
    let mut restricted = Matrix::zeros(0, n);
    let mut row = vec![Elem::ZERO; n];
    for h in checks.iter_rows() {
        for j in 0..tower.s() {
            let b = big.exp(j as i64);
            for (dst, &hi) in row.iter_mut().zip(h) {
                let t = tower.trace_to_small(big.mul(b, hi));
                *dst = tower.restrict(t).expect("trace lands in the subfield");
            }
            restricted.push_row(&row);
        }
    }
    let small = tower.small().clone();
    let kernel = restricted.kernel(&small);
    let meta = CodeMeta {
        construction: "subfield subcode".into(),
        ..code.meta().clone()
    };
    Ok(LinearCode::from_generators(small, kernel, meta))
}

/// The subfield-subcode built from trace images: rows `ev_P(𝒯(γ^j X^e))`
/// for `e` ranging over the coset representatives of Δ and `j < s`.
///
/// Requires Δ to be closed under `e ↦ q²e` as exponents on `points`, which
/// holds when Δ lives modulo q^{2s}−1 or when every point is a root of
/// unity of order dividing Δ's modulus.
pub fn subfield_subcode_by_trace(
    points: &PointSet,
    delta: &DefiningSet,
) -> Result<LinearCode, CodeError> {
    let tower = points.tower();
    let modulus = delta.modulus() as u64;
    let compatible =
        modulus == tower.big_mult_order() || (points.blocks() == 1 && modulus.is_multiple_of(points.block_len()));
    if !compatible {
        return Err(CodeError::IncompatibleDefiningSet { modulus });
    }
    let big = tower.big();
    let n = points.len();
    let mut gen = Matrix::zeros(0, n);
    let mut exponents: Vec<u32> = delta.representatives();
    if delta.includes_zero() {
        exponents.insert(0, 0);
    }
    for e in exponents {
        let ev = points.evaluate_monomial(e as u64);
        for j in 0..tower.s() {
            let b = big.exp(j as i64);
            let row: Vec<Elem> = ev
                .iter()
                .map(|&x| {
                    let t = tower.trace_to_small(big.mul(b, x));
                    tower.restrict(t).expect("trace lands in the subfield")
                })
                .collect();
            gen.push_row(&row);
        }
    }
    let meta = CodeMeta {
        construction: "trace code".into(),
        defining_set: Some(delta.into()),
        points: Some(points.kind()),
    };
    Ok(LinearCode::from_generators(tower.small().clone(), gen, meta))
}

/// Restriction to the coordinates `keep`, which must be a prefix `0..m`.
pub fn puncture(code: &LinearCode, keep: std::ops::Range<usize>) -> Result<LinearCode, CodeError> {
    let len = code.len();
    if keep.start != 0 || keep.end == 0 || keep.end > len {
        return Err(CodeError::BadRange {
            start: keep.start,
            end: keep.end,
            len,
        });
    }
    let cols = code.generator().columns(keep.start, keep.end);
    let meta = CodeMeta {
        construction: format!("punctured {}", code.meta().construction),
        ..code.meta().clone()
    };
    Ok(LinearCode::from_generators(code.field().clone(), cols, meta))
}

/// `q` such that the alphabet has order q², if it has square order.
pub fn hermitian_q(field: &FieldCtx) -> Result<u64, CodeError> {
    if !field.degree().is_multiple_of(2) {
        return Err(CodeError::NonSquareAlphabet(field.order()));
    }
    Ok((field.characteristic() as u64).pow(field.degree() / 2))
}

/// Hermitian conjugate `x ↦ x^q` applied entrywise.
pub fn conjugate(field: &FieldCtx, m: &Matrix) -> Result<Matrix, CodeError> {
    let q = hermitian_q(field)?;
    Ok(m.map(|x| field.pow(x, q)))
}

/// `C^{⊥h} = {x : Σ xᵢ yᵢ^q = 0 for all y ∈ C}`.
pub fn hermitian_dual(code: &LinearCode) -> Result<LinearCode, CodeError> {
    let f = code.field();
    let n = code.len();
    if code.dim() == 0 {
        hermitian_q(f)?;
        return Ok(LinearCode::full(f.clone(), n).with_meta(CodeMeta::named("hermitian dual")));
    }
    let conj = conjugate(f, code.generator())?;
    let k = conj.kernel(f);
    Ok(LinearCode::from_generators(f.clone(), k, CodeMeta::named("hermitian dual")))
}

/// Default dimension cap for [`min_distance_exhaustive`]: 20 over GF(4),
/// scaled down for larger alphabets so the search stays under 2³⁰ words.
pub fn default_distance_cap(field: &FieldCtx) -> usize {
    let per_symbol = (field.order() as f64).log2();
    ((40.0 / per_symbol).floor() as usize).min(20)
}

/// Minimum nonzero Hamming weight, by enumerating one codeword per
/// projective point (first nonzero message coordinate fixed to 1). Split
/// across rayon workers by the position of that leading coordinate.
pub fn min_distance_exhaustive(code: &LinearCode, cap: usize) -> Result<usize, CodeError> {
    let k = code.dim();
    if k == 0 {
        return Err(CodeError::EmptyCode);
    }
    let f = code.field();
    let q = f.order() as f64;
    let words = (q.powi(k as i32) - 1.0) / (q - 1.0);
    if k > cap || words > MAX_ENUMERATED_WORDS {
        return Err(CodeError::TooLarge { dim: k, words });
    }
    let g = code.generator();
    let best = (0..k)
        .into_par_iter()
        .map(|lead| min_weight_with_leader(f, g, lead))
        .min()
        .expect("k > 0");
    Ok(best)
}

/// Min weight over words `row_lead + Σ_{j>lead} c_j row_j`, walking the
/// coefficients as an odometer so each step changes one row's contribution.
fn min_weight_with_leader(f: &FieldCtx, g: &Matrix, lead: usize) -> usize {
    let n = g.cols();
    let order = f.order();
    let free: Vec<usize> = (lead + 1..g.rows()).collect();
    let mut word = g.row(lead).to_vec();
    let mut weight = word.iter().filter(|x| !x.is_zero()).count();
    let mut best = weight;
    let mut digits = vec![0u32; free.len()];
    // steps[v] = Elem(v+1) - Elem(v); wrap = 0 - Elem(order-1)
    let steps: Vec<Elem> = (0..order - 1)
        .map(|v| f.sub(Elem::from_index(v + 1), Elem::from_index(v)))
        .collect();
    let wrap = f.neg(Elem::from_index(order - 1));
    'outer: loop {
        let mut pos = 0;
        loop {
            if pos == free.len() {
                break 'outer;
            }
            let (delta, carry) = if digits[pos] + 1 == order {
                digits[pos] = 0;
                (wrap, true)
            } else {
                digits[pos] += 1;
                (steps[digits[pos] as usize - 1], false)
            };
            let row = g.row(free[pos]);
            for i in 0..n {
                let r = row[i];
                if r.is_zero() {
                    continue;
                }
                let old = word[i];
                let new = f.add(old, f.mul(delta, r));
                weight = weight + (!new.is_zero()) as usize - (!old.is_zero()) as usize;
                word[i] = new;
            }
            if !carry {
                break;
            }
            pos += 1;
        }
        best = best.min(weight);
    }
    best
}
