//! Seeded Monte-Carlo decode trials with a byte-stable CSV artifact.
//!
//! Per-trial seeds are `seed + global_trial_index` (wrapping), where the
//! global index counts trials in run order across the whole t-range, so
//! parallel and serial runs aggregate identically. Each trial draws the
//! message coefficients and then the error polynomial from its own
//! SplitMix64 stream.

use std::time::Instant;

use crate::gabidulin::CodeParams;
use crate::gf::Fe;
use crate::linpoly::{random_error_poly_with, random_fe, LinPoly};
use crate::rng::SplitMix64;

/// Aggregated result of one (params, t) sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub trials: u64,
    pub successes: u64,
    pub failures: u64,
    pub avg_decode_micros: f64,
    pub seed: u64,
}

/// Run `trials` seeded decode trials for every t in `t_range`. A trial
/// succeeds when message and error are both recovered exactly. Decoder
/// errors count as failures; nothing aborts the run.
pub fn simulate(
    params: &CodeParams,
    t_range: std::ops::RangeInclusive<usize>,
    trials: u64,
    seed: u64,
) -> Vec<TrialRecord> {
    let ctx = params.ctx();
    let k = params.k();
    let mut records = Vec::new();
    let mut global_index: u64 = 0;
    for t in t_range {
        let mut successes = 0u64;
        let mut total_micros = 0f64;
        for _ in 0..trials {
            let mut rng = SplitMix64::new(seed.wrapping_add(global_index));
            global_index += 1;
            let msg: Vec<Fe> = (0..k).map(|_| random_fe(ctx, &mut rng)).collect();
            let f = LinPoly::from_coeffs(ctx, msg);
            let cw = params.encode(&f).expect("message has q-degree < k");
            let e = match random_error_poly_with(ctx, t, &mut rng) {
                Ok(e) => e,
                Err(_) => continue,
            };
            let rx: Vec<Fe> = cw
                .iter()
                .zip(params.basis())
                .map(|(c, b)| ctx.add(c, &e.eval(ctx, b)))
                .collect();
            let start = Instant::now();
            let outcome = params.decode(&rx);
            total_micros += start.elapsed().as_secs_f64() * 1e6;
            if let Ok(out) = outcome {
                if out.message == f && out.error == e {
                    successes += 1;
                }
            }
        }
        records.push(TrialRecord {
            q: ctx.q(),
            n: ctx.degree(),
            k,
            t,
            trials,
            successes,
            failures: trials - successes,
            avg_decode_micros: if trials > 0 {
                total_micros / trials as f64
            } else {
                0.0
            },
            seed,
        });
    }
    records
}

/// Fixed-schema CSV. The timing column breaks byte-stability across runs,
/// so it is written as 0 unless `include_timing` is set; the measured value
/// always remains available on the in-memory records.
pub fn write_csv(records: &[TrialRecord], include_timing: bool) -> String {
    let mut out = String::from("q,n,k,t,trials,successes,failures,avg_decode_micros,seed\n");
    for r in records {
        let micros = if include_timing {
            r.avg_decode_micros.round() as u64
        } else {
            0
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.q, r.n, r.k, r.t, r.trials, r.successes, r.failures, micros, r.seed
        ));
    }
    out
}
