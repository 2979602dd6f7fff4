//! Reference claims re-derived from scratch by `hbch examples`.

use hbch::evalcodes::PointSet;
use hbch::hermitian::{monomial_hermitian_product, monomial_pair_orthogonal, sharp_bound_bruteforce, BoundReport};
use hbch::quantum::{lengthen, reference_configs, run_pipeline, PipelineConfig};
use hbch::{ConwayTable, CosetSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::build_tower;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: String,
    pub pass: bool,
    pub detail: String,
}

fn verdict(claim: impl Into<String>, result: Result<String, String>) -> Verdict {
    let (pass, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Verdict {
        claim: claim.into(),
        pass,
        detail,
    }
}

fn code_claims(
    cfg: &PipelineConfig,
    base: &str,
    rank: usize,
    lengthened: &[&str],
    table: Option<&ConwayTable>,
) -> Vec<Verdict> {
    let run = build_tower(cfg.q, cfg.s, table)
        .map_err(|e| format!("field construction failed: {e}"))
        .and_then(|t| run_pipeline(t, cfg).map_err(|e| e.to_string()));
    let mut out = Vec::new();
    match run {
        Ok(o) => {
            let r = o.report;
            let got = r.params.to_string();
            let ok = got == base && r.rank == rank && r.gram_zero;
            out.push(verdict(
                base,
                if ok {
                    Ok(format!("rank {} gram zero", r.rank))
                } else {
                    Err(format!("got {got} rank {} gram {}", r.rank, if r.gram_zero { "zero" } else { "nonzero" }))
                },
            ));
            for (i, want) in lengthened.iter().enumerate() {
                let got = lengthen(&r.params, i as u32 + 1).map(|p| p.to_string()).map_err(|e| e.to_string());
                out.push(verdict(
                    *want,
                    match got {
                        Ok(g) if g == *want => Ok(format!("{} lengthening steps", i + 1)),
                        Ok(g) => Err(format!("got {g}")),
                        Err(e) => Err(e),
                    },
                ));
            }
        }
        Err(e) => {
            out.push(verdict(base, Err(e.clone())));
            out.extend(lengthened.iter().map(|w| verdict(*w, Err(format!("base code unavailable: {e}")))));
        }
    }
    out
}

fn bound_claim(q: u64, s: u32, n1: u64, l: i64) -> Verdict {
    let claim = format!("L={l} for q={q} s={s} n1={n1}");
    let result = BoundReport::compute(q, s, n1).map_err(|e| e.to_string()).and_then(|r| {
        let closed: Vec<i64> = r.closed_forms.iter().map(|&(_, v)| v).collect();
        if r.brute_l() == Some(l) && closed == [l] {
            Ok("closed form and brute force agree".to_string())
        } else {
            Err(format!("closed form {closed:?}, brute force {:?}", r.brute_l()))
        }
    });
    verdict(claim, result)
}

fn coset_claim() -> Verdict {
    let want: [[u32; 2]; 9] = [[1, 64], [2, 37], [3, 10], [4, 74], [5, 47], [6, 20], [7, 84], [8, 57], [9, 30]];
    let result = CosetSystem::new(91, 8).map_err(|e| e.to_string()).and_then(|sys| {
        let got: Vec<Vec<u32>> = (1..=9).map(|i| sys.coset(i).to_vec()).collect();
        let mut want: Vec<Vec<u32>> = want.iter().map(|c| c.to_vec()).collect();
        want.iter_mut().for_each(|c| c.sort_unstable());
        if got == want {
            Ok("first nine nonzero cosets match".to_string())
        } else {
            Err(format!("got {got:?}"))
        }
    });
    verdict("cosets modulo 91 under 64", result)
}

fn random_product_claim(table: Option<&ConwayTable>, seed: u64) -> Verdict {
    let claim = "factorized Hermitian products agree with direct sums";
    let result = build_tower(2, 5, table)
        .map_err(|e| e.to_string())
        .and_then(|t| PointSet::homothetic(t, 93, 2).map_err(|e| e.to_string()))
        .and_then(|p| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let order = p.tower().big_mult_order();
            for _ in 0..500 {
                let (e, e2) = (rng.gen_range(0..order), rng.gen_range(0..order));
                let direct = monomial_hermitian_product(&p, e, e2).is_zero();
                if monomial_pair_orthogonal(&p, e, e2) != direct {
                    return Err(format!("disagree at e={e} e2={e2}"));
                }
            }
            Ok(format!("500 random pairs, seed {seed}"))
        });
    verdict(claim, result)
}

fn sharpness_claim() -> Verdict {
    let result = sharp_bound_bruteforce(8, 2, 91).map_err(|e| e.to_string()).and_then(|b| {
        if b.l >= 9 {
            Ok(format!("L={} admits representatives up to 9", b.l))
        } else {
            Err(format!("L={} forbids a'=9", b.l))
        }
    });
    verdict("BCH of length 91 over GF(64) with nine cosets is admissible", result)
}

pub fn run_all(table: Option<&ConwayTable>, seed: u64) -> Vec<Verdict> {
    let cfgs = reference_configs();
    let mut out = vec![coset_claim(), bound_claim(2, 5, 93, 10), bound_claim(5, 2, 48, 7), sharpness_claim()];
    out.extend(code_claims(
        &cfgs[0],
        "[[186,126,>=9]]_2",
        30,
        &["[[187,126,>=9]]_2", "[[188,126,>=9]]_2", "[[189,126,>=9]]_2"],
        table,
    ));
    out.extend(code_claims(&cfgs[1], "[[96,68,>=8]]_5", 14, &["[[97,68,>=8]]_5"], table));
    out.extend(code_claims(
        &cfgs[2],
        "[[96,72,>=7]]_5",
        12,
        &["[[97,72,>=7]]_5", "[[98,72,>=7]]_5", "[[99,72,>=7]]_5"],
        table,
    ));
    out.extend(code_claims(&cfgs[3], "[[91,55,>=11]]_8", 18, &["[[92,55,>=11]]_8"], table));
    out.push(random_product_claim(table, seed));
    out
}
