//! Quantum stabilizer parameters from Hermitian self-orthogonal codes, the
//! homothetic-BCH construction pipeline, lengthening and grid scans.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cosets::{CosetSystem, DefiningSet, DefiningSetSummary};
use crate::error::{CosetError, QuantumError};
use crate::evalcodes::{evaluation_code, hermitian_q, subfield_subcode, LinearCode, PointSet};
use crate::gf::{prime_power, ConwayTable, FieldTower};
use crate::hermitian::{big_order, case_form_lengths, is_hermitian_self_orthogonal, resolve_bound, BoundResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    /// Subfield-subcode on λ ≥ 2 homothetic copies of U(n₁).
    Homothetic,
    /// Narrow-sense BCH code of length n₁ (λ = 1).
    Bch,
    /// Any Hermitian self-orthogonal code handed in directly.
    Classical,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Homothetic => "homothetic",
            Construction::Bch => "bch",
            Construction::Classical => "classical",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub construction: Construction,
    pub s: Option<u32>,
    pub n1: Option<u64>,
    pub lambda: Option<u64>,
    pub tau: Option<usize>,
    /// Nonzero coset representatives of Δ.
    pub cosets: Vec<u32>,
    pub include_zero: bool,
    pub classical_dim: usize,
}

/// `[[n, k, ≥ d_designed]]_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumParams {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub d_designed: u64,
    /// Lengthening steps applied.
    pub pure_chain: u32,
    pub provenance: Provenance,
}

impl QuantumParams {
    /// One-line record:
    /// `q n k d construction=… q= s= n1= lambda= cosets=[…] zero= lengthened=`.
    pub fn record(&self) -> String {
        let p = &self.provenance;
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let cosets: Vec<String> = p.cosets.iter().map(u32::to_string).collect();
        format!(
            "{} {} {} {} construction={} q={} s={} n1={} lambda={} cosets=[{}] zero={} lengthened={}",
            self.q,
            self.n,
            self.k,
            self.d_designed,
            p.construction,
            self.q,
            opt(p.s.map(|v| v.to_string())),
            opt(p.n1.map(|v| v.to_string())),
            opt(p.lambda.map(|v| v.to_string())),
            cosets.join(","),
            p.include_zero,
            self.pure_chain
        )
    }

    fn sort_key(&self) -> (u64, usize, std::cmp::Reverse<usize>, std::cmp::Reverse<u64>) {
        (self.q, self.n, std::cmp::Reverse(self.k), std::cmp::Reverse(self.d_designed))
    }
}

impl fmt::Display for QuantumParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},>={}]]_{}", self.n, self.k, self.d_designed, self.q)
    }
}

/// Requires `code` to pass the Gram test; returns `[[n, n − 2·dim, ≥ d_bound]]_q`.
pub fn stabilizer_from_classical(code: &LinearCode, d_bound: u64) -> Result<QuantumParams, QuantumError> {
    let q = hermitian_q(code.field())?;
    if d_bound == 0 {
        return Err(QuantumError::PreconditionViolated("d_bound must be at least 1".into()));
    }
    let check = is_hermitian_self_orthogonal(code)?;
    if let Some((i, j)) = check.violation {
        return Err(QuantumError::NotSelfOrthogonal(i, j));
    }
    let dim = code.dim();
    Ok(QuantumParams {
        q,
        n: code.len(),
        k: code.len() - 2 * dim,
        d_designed: d_bound,
        pure_chain: 0,
        provenance: Provenance {
            construction: Construction::Classical,
            s: None,
            n1: None,
            lambda: None,
            tau: None,
            cosets: Vec::new(),
            include_zero: false,
            classical_dim: dim,
        },
    })
}

/// `[[n, k, d]] → [[n + 1, k, ≥ d]]`, `steps` times.
pub fn lengthen(params: &QuantumParams, steps: u32) -> Result<QuantumParams, QuantumError> {
    if steps == 0 {
        return Err(QuantumError::ZeroSteps);
    }
    Ok(QuantumParams {
        n: params.n + steps as usize,
        pure_chain: params.pure_chain + steps,
        ..params.clone()
    })
}

/// Which nonzero cosets make up Δ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Selection {
    /// The first τ nonzero cosets.
    Tau(usize),
    /// An explicit list of representatives.
    Representatives(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub q: u32,
    pub s: u32,
    pub n1: u64,
    pub lambda: u64,
    pub selection: Selection,
    pub include_zero: bool,
}

impl PipelineConfig {
    pub fn tau(q: u32, s: u32, n1: u64, lambda: u64, tau: usize, include_zero: bool) -> Self {
        PipelineConfig {
            q,
            s,
            n1,
            lambda,
            selection: Selection::Tau(tau),
            include_zero,
        }
    }

    pub fn representatives(q: u32, s: u32, n1: u64, lambda: u64, reps: &[u32], include_zero: bool) -> Self {
        PipelineConfig {
            q,
            s,
            n1,
            lambda,
            selection: Selection::Representatives(reps.to_vec()),
            include_zero,
        }
    }

    pub fn construction(&self) -> Construction {
        if self.lambda == 1 {
            Construction::Bch
        } else {
            Construction::Homothetic
        }
    }

    /// Checks every arithmetic precondition that needs no field arithmetic.
    pub fn validate(&self) -> Result<(), QuantumError> {
        let bad = |m: String| Err(QuantumError::PreconditionViolated(m));
        let Some((p, _)) = prime_power(self.q as u64) else {
            return bad(format!("q = {} is not a prime power", self.q));
        };
        if self.s < 2 {
            return bad(format!("s = {} must be at least 2", self.s));
        }
        let order = big_order(self.q as u64, self.s)?;
        let n1 = self.n1 as u128;
        if self.n1 < 2 || order % n1 != 0 {
            return bad(format!("n1 = {} must divide q^(2s)-1 = {}", self.n1, order));
        }
        let max = order / n1;
        if self.lambda == 0 || self.lambda as u128 > max {
            return bad(format!("lambda = {} must lie in 1..={}", self.lambda, max));
        }
        if self.lambda > 1 && order % (self.lambda as u128 * n1) == 0 {
            return bad(format!(
                "lambda*n1 = {} divides q^(2s)-1",
                self.lambda as u128 * n1
            ));
        }
        if self.include_zero && !self.lambda.is_multiple_of(p as u64) {
            return bad(format!("zero coset requires p = {p} to divide lambda = {}", self.lambda));
        }
        match &self.selection {
            Selection::Tau(0) => bad("tau must be at least 1".into()),
            Selection::Representatives(r) if r.is_empty() => bad("coset list is empty".into()),
            _ => Ok(()),
        }
    }
}

/// Everything computed by one pipeline run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub config: PipelineConfig,
    pub construction: Construction,
    /// Δ, modulo q^{2s}−1 for homothetic runs and modulo n₁ for BCH runs.
    pub delta: DefiningSetSummary,
    /// Δ′ = Δ mod n₁.
    pub reduced: DefiningSetSummary,
    pub a_prime: u32,
    pub bound: BoundResult,
    /// Smallest absent representative of Δ.
    pub next_representative: u32,
    /// Σ #Λ, counting Λ₀ when present.
    pub coset_size_sum: usize,
    /// λn₁ − 2·Σ #Λ
    pub k_lower_bound: i64,
    pub rank: usize,
    pub gram_zero: bool,
    pub params: QuantumParams,
}

impl PipelineReport {
    pub fn length(&self) -> usize {
        self.params.n
    }
}

pub struct PipelineOutput {
    pub report: PipelineReport,
    pub code: LinearCode,
}

/// Builds the tower with the bundled Conway table and runs the pipeline.
pub fn homothetic_pipeline(cfg: &PipelineConfig) -> Result<PipelineReport, QuantumError> {
    cfg.validate()?;
    let tower = Arc::new(FieldTower::new(cfg.q, cfg.s)?);
    Ok(run_pipeline(tower, cfg)?.report)
}

/// Runs the pipeline on an existing tower, keeping the classical code.
pub fn run_pipeline(tower: Arc<FieldTower>, cfg: &PipelineConfig) -> Result<PipelineOutput, QuantumError> {
    cfg.validate()?;
    if tower.q() != cfg.q || tower.s() != cfg.s {
        return Err(QuantumError::PreconditionViolated("tower does not match (q, s)".into()));
    }
    let construction = cfg.construction();
    let modulus = match construction {
        Construction::Bch => cfg.n1,
        _ => tower.big_mult_order(),
    };
    let system = Arc::new(CosetSystem::new(modulus as u32, cfg.q)?);
    let delta = match &cfg.selection {
        Selection::Tau(t) => DefiningSet::prefix(system, *t, cfg.include_zero)?,
        Selection::Representatives(r) => DefiningSet::from_representatives(system, r, cfg.include_zero)?,
    };
    let reduced = if modulus == cfg.n1 {
        delta.clone()
    } else {
        delta.reduce_mod(cfg.n1 as u32)?
    };
    if reduced.includes_zero() && !cfg.include_zero {
        return Err(QuantumError::PreconditionViolated(format!(
            "a nonzero coset of the defining set reduces to 0 mod n1 = {}",
            cfg.n1
        )));
    }
    let a_prime = reduced.max_representative().unwrap_or(0);
    let bound = resolve_bound(cfg.q as u64, cfg.s, cfg.n1)?;
    if a_prime as i64 > bound.l {
        return Err(QuantumError::BoundExceeded {
            max_rep: a_prime as u64,
            bound: bound.l,
        });
    }
    let next = match delta.next_representative() {
        Ok(a) => a,
        Err(CosetError::Exhausted) => {
            return Err(QuantumError::PreconditionViolated(
                "every nonzero coset is selected, no designed distance".into(),
            ))
        }
        Err(e) => return Err(e.into()),
    };

    let points = PointSet::homothetic(tower.clone(), cfg.n1, cfg.lambda)?;
    let code = subfield_subcode(&evaluation_code(&points, &delta), &tower)?;
    let gram = is_hermitian_self_orthogonal(&code)?;
    if let Some((i, j)) = gram.violation {
        return Err(QuantumError::NotSelfOrthogonal(i, j));
    }

    let n = points.len();
    let rank = code.dim();
    let coset_size_sum = delta.len();
    let d_designed = next as u64 + cfg.include_zero as u64;
    let params = QuantumParams {
        q: cfg.q as u64,
        n,
        k: n - 2 * rank,
        d_designed,
        pure_chain: 0,
        provenance: Provenance {
            construction,
            s: Some(cfg.s),
            n1: Some(cfg.n1),
            lambda: Some(cfg.lambda),
            tau: Some(delta.tau()),
            cosets: delta.representatives(),
            include_zero: cfg.include_zero,
            classical_dim: rank,
        },
    };
    let report = PipelineReport {
        config: cfg.clone(),
        construction,
        delta: (&delta).into(),
        reduced: (&reduced).into(),
        a_prime,
        bound,
        next_representative: next,
        coset_size_sum,
        k_lower_bound: n as i64 - 2 * coset_size_sum as i64,
        rank,
        gram_zero: gram.self_orthogonal,
        params,
    };
    Ok(PipelineOutput { report, code })
}

/// Candidate lengths n₁ for each (q, s) in a scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LengthChoice {
    /// Every divisor of q^{2s}−1 matching a closed-form family.
    CaseForms,
    Explicit(Vec<u64>),
}

/// A product grid of pipeline configurations plus pinned extras.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanGrid {
    pub qs: Vec<u32>,
    pub ss: Vec<u32>,
    pub lengths: LengthChoice,
    pub lambda_max: u64,
    pub tau_max: usize,
    /// Also try Δ₀ wherever p | λ.
    pub with_zero: bool,
    pub pinned: Vec<PipelineConfig>,
}

impl ScanGrid {
    pub fn empty() -> Self {
        ScanGrid {
            qs: Vec::new(),
            ss: Vec::new(),
            lengths: LengthChoice::Explicit(Vec::new()),
            lambda_max: 0,
            tau_max: 0,
            with_zero: false,
            pinned: Vec::new(),
        }
    }

    pub fn pinned(configs: Vec<PipelineConfig>) -> Self {
        ScanGrid {
            pinned: configs,
            ..Self::empty()
        }
    }

    /// All configurations passing [`PipelineConfig::validate`], pinned ones
    /// last, without duplicates.
    pub fn configs(&self) -> Vec<PipelineConfig> {
        let mut out = Vec::new();
        for &q in &self.qs {
            for &s in &self.ss {
                let Ok(order) = big_order(q as u64, s) else {
                    continue;
                };
                if order > u64::MAX as u128 {
                    continue;
                }
                let lengths = match &self.lengths {
                    LengthChoice::CaseForms => case_form_lengths(q as u64, s, order as u64),
                    LengthChoice::Explicit(v) => v.clone(),
                };
                for n1 in lengths {
                    for lambda in 1..=self.lambda_max {
                        for tau in 1..=self.tau_max {
                            for zero in [false, true] {
                                if zero && !self.with_zero {
                                    continue;
                                }
                                let cfg = PipelineConfig::tau(q, s, n1, lambda, tau, zero);
                                if cfg.validate().is_ok() {
                                    out.push(cfg);
                                }
                            }
                        }
                    }
                }
            }
        }
        for cfg in &self.pinned {
            if !out.contains(cfg) {
                out.push(cfg.clone());
            }
        }
        out
    }
}

/// Runs every grid configuration and returns the verified codes, one per
/// `(q, n, k, d)`, sorted by `(q, n, −k, −d)`.
///
/// A zero budget yields an empty list. Configurations that violate a
/// precondition or exceed L are skipped; anything else is an error.
pub fn scan(grid: &ScanGrid, budget: usize, table: Option<&ConwayTable>) -> Result<Vec<QuantumParams>, QuantumError> {
    if budget == 0 {
        return Ok(Vec::new());
    }
    let configs = grid.configs();
    if configs.len() > budget {
        return Err(QuantumError::BudgetExceeded {
            needed: configs.len(),
            budget,
        });
    }
    let mut towers: BTreeMap<(u32, u32), Arc<FieldTower>> = BTreeMap::new();
    for c in &configs {
        if let std::collections::btree_map::Entry::Vacant(e) = towers.entry((c.q, c.s)) {
            let t = match table {
                Some(tab) => FieldTower::with_table(c.q, c.s, tab)?,
                None => FieldTower::new(c.q, c.s)?,
            };
            e.insert(Arc::new(t));
        }
    }
    let results: Vec<Result<Option<QuantumParams>, QuantumError>> = configs
        .par_iter()
        .map(|c| match run_pipeline(towers[&(c.q, c.s)].clone(), c) {
            Ok(out) => Ok(Some(out.report.params)),
            Err(
                QuantumError::PreconditionViolated(_)
                | QuantumError::BoundExceeded { .. }
                | QuantumError::Coset(CosetError::IndexOutOfRange { .. }),
            ) => Ok(None),
            Err(e) => Err(e),
        })
        .collect();
    let mut found = Vec::new();
    for r in results {
        found.extend(r?);
    }
    found.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()).then_with(|| a.record().cmp(&b.record())));
    found.dedup_by(|b, a| (a.q, a.n, a.k, a.d_designed) == (b.q, b.n, b.k, b.d_designed));
    Ok(found)
}

/// The three base configurations of the worked examples.
pub fn reference_configs() -> Vec<PipelineConfig> {
    vec![
        PipelineConfig::representatives(2, 5, 93, 2, &[1, 2, 3, 5, 6, 7], false),
        PipelineConfig::tau(5, 2, 48, 2, 7, false),
        PipelineConfig::tau(5, 2, 48, 2, 6, false),
        PipelineConfig::tau(8, 2, 91, 1, 9, false),
    ]
}
