// Copyright 2026 The tqsf Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! Cross-check suite: every circuit against the diagonalization oracle and against each other.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{input_err, Result, TqsfError};
use crate::evolution::EvolutionMode;
use crate::filter::{
    DeferredCircuit, FilterMethod, FilterRun, OutcomeLabel, RegisterCircuit, RegisterLayout,
    SequentialFilter,
};
use crate::spin::{
    coupling_sum, degeneracy, eigen_oracle, loose_coupling_register_size, min_ancillas,
    prefix_spin_squared, total_spin_squared, AncillaKind, SpinLabel, SpinProjector,
};
use crate::states;
use crate::statevector::StateVector;

/// Largest system size the suite accepts.
pub const VERIFY_MAX_QUBITS: usize = 6;

/// Random states drawn per system size.
pub const STATES_PER_SIZE: usize = 12;

const SEED: u64 = 0x7e57;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub n: usize,
    pub passed: bool,
    /// Largest deviation seen, when the check is numeric.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_error: Option<f64>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n_max: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn numeric(name: &str, n: usize, err: f64, tol: f64, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name: name.into(),
        n,
        passed: err.is_finite() && err <= tol,
        max_error: Some(err),
        detail: format!("{} (tolerance {tol:e})", detail.into()),
    }
}

fn failed(name: &str, n: usize, e: &TqsfError) -> CheckResult {
    CheckResult {
        name: name.into(),
        n,
        passed: false,
        max_error: None,
        detail: e.to_string(),
    }
}

fn residual(psi: &[Complex64], image: &[Complex64], lambda: f64) -> f64 {
    psi.iter()
        .zip(image)
        .map(|(a, b)| (b - a * lambda).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// ‖S_z ψ − M ψ‖ with S_z diagonal in the computational basis.
fn sz_residual(psi: &StateVector, two_m: i32) -> f64 {
    let n = psi.num_qubits() as f64;
    psi.amplitudes()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let m = n / 2.0 - f64::from(i.count_ones());
            (a * (m - f64::from(two_m) / 2.0)).norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}

/// Marginal of a run over the given key.
fn marginal<K: Ord>(run: &FilterRun, key: impl Fn(&OutcomeLabel) -> K) -> BTreeMap<K, f64> {
    let mut out = BTreeMap::new();
    for o in &run.outcomes {
        *out.entry(key(&o.label)).or_insert(0.0) += o.probability;
    }
    out
}

fn max_gap<K: Ord>(a: &BTreeMap<K, f64>, b: &BTreeMap<K, f64>) -> f64 {
    let keys: std::collections::BTreeSet<&K> = a.keys().chain(b.keys()).collect();
    keys.into_iter()
        .map(|k| (a.get(k).unwrap_or(&0.0) - b.get(k).unwrap_or(&0.0)).abs())
        .fold(0.0, f64::max)
}

fn random_states(n: usize, count: usize) -> Result<Vec<StateVector>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ n as u64);
    (0..count).map(|_| states::random(n, &mut rng)).collect()
}

fn check_spectrum(n: usize) -> Result<CheckResult> {
    let set = eigen_oracle(&total_spin_squared(n)?.into())?;
    let mut err: f64 = 0.0;
    let mut ok = true;
    for (k, &lambda) in set.eigenvalues().iter().enumerate() {
        let two_s = ((4.0 * lambda + 1.0).sqrt() - 1.0).round() as u32;
        let s = f64::from(two_s) / 2.0;
        err = err.max((lambda - s * (s + 1.0)).abs());
        let expected = degeneracy(n, two_s)? * (u64::from(two_s) + 1);
        ok &= set.ranks()[k] as u64 == expected;
    }
    let mut check = numeric("spin-spectrum", n, err, 1e-10, "S² eigenvalues are S(S+1)");
    if !ok {
        check.passed = false;
        check
            .detail
            .push_str("; eigenspace ranks differ from (2S+1)·d_S");
    }
    Ok(check)
}

fn check_coupling_identity(n: usize) -> Result<CheckResult> {
    let mut err: f64 = 0.0;
    for j in 2..=n {
        let lhs = coupling_sum(j, n)?.to_dense();
        let upper = prefix_spin_squared(j, n)?.to_dense();
        let lower = if j == 2 {
            // S²_[1] = 3/4
            nalgebra::DMatrix::identity(1 << n, 1 << n) * 0.75
        } else {
            prefix_spin_squared(j - 1, n)?.to_dense()
        };
        let shift = (5.0 - 2.0 * j as f64) / 4.0;
        let rhs = upper - lower - nalgebra::DMatrix::identity(1 << n, 1 << n) * shift;
        err = err.max((lhs - rhs).abs().max());
    }
    Ok(numeric(
        "coupling-identity",
        n,
        err,
        1e-12,
        "H_[j] equals the prefix spin difference minus (5-2j)/4",
    ))
}

fn check_method_a(n: usize, inputs: &[StateVector]) -> Result<Vec<CheckResult>> {
    let circuit = RegisterCircuit::new(FilterMethod::A, n, EvolutionMode::Exact)?;
    let projector = SpinProjector::new(n)?;
    let results: Vec<Result<(f64, f64, f64, f64)>> = inputs
        .par_iter()
        .map(|psi| {
            let run = circuit.run(psi)?;
            let mut oracle_err: f64 = 0.0;
            for label in SpinLabel::all(n) {
                let (a, _) = projector.project(psi, &label)?;
                oracle_err =
                    oracle_err.max((a - run.probability_of(&OutcomeLabel::Spin(label))).abs());
            }
            let total_err = (run.total_probability() - 1.0).abs();
            let s2 = total_spin_squared(n)?;
            let mut funnel: f64 = 0.0;
            let mut refilter: f64 = 0.0;
            for o in &run.outcomes {
                let OutcomeLabel::Spin(l) = o.label else {
                    return Err(TqsfError::Internal("method a produced a path label".into()));
                };
                let image = s2.apply(o.post_state.amplitudes());
                funnel = funnel
                    .max(residual(
                        o.post_state.amplitudes(),
                        &image,
                        l.spin_squared(),
                    ))
                    .max(sz_residual(&o.post_state, l.two_m));
                let again = circuit.run(&o.post_state)?;
                refilter = refilter.max(1.0 - again.probability_of(&o.label));
            }
            Ok((oracle_err, total_err, funnel, refilter))
        })
        .collect();
    let mut worst = [0.0f64; 4];
    for r in results {
        let r = r?;
        worst[0] = worst[0].max(r.0);
        worst[1] = worst[1].max(r.1);
        worst[2] = worst[2].max(r.2);
        worst[3] = worst[3].max(r.3);
    }
    Ok(vec![
        numeric(
            "method-a-oracle",
            n,
            worst[0],
            1e-8,
            "A_{S,M} against projector weights",
        ),
        numeric(
            "method-a-normalization",
            n,
            worst[1],
            1e-10,
            "outcome probabilities sum to 1",
        ),
        numeric(
            "method-a-funnel",
            n,
            worst[2],
            1e-8,
            "post-states are S² and S_z eigenstates",
        ),
        numeric(
            "method-a-refilter",
            n,
            worst[3],
            1e-10,
            "re-filtering keeps the label",
        ),
    ])
}

fn check_method_b(n: usize, inputs: &[StateVector]) -> Result<Vec<CheckResult>> {
    let s2j = RegisterCircuit::new(FilterMethod::BS2j, n, EvolutionMode::Exact)?;
    let hj = RegisterCircuit::new(FilterMethod::BHj, n, EvolutionMode::Exact)?;
    let a = RegisterCircuit::new(FilterMethod::A, n, EvolutionMode::Exact)?;
    let deferred = DeferredCircuit::new(n, EvolutionMode::Exact)?;
    let tree = SequentialFilter::new(n, EvolutionMode::Exact)?;
    let prefixes: Vec<_> = (2..=n)
        .map(|j| prefix_spin_squared(j, n))
        .collect::<Result<_>>()?;
    let results: Vec<Result<[f64; 5]>> = inputs
        .par_iter()
        .map(|psi| {
            let rs = s2j.run(psi)?;
            let rh = hj.run(psi)?;
            let ra = a.run(psi)?;
            let mut variant = max_gap(
                &marginal(&rs, |l| (l.path().cloned(), l.two_m())),
                &marginal(&rh, |l| (l.path().cloned(), l.two_m())),
            );
            for o in &rs.outcomes {
                let other = rh.find(&o.label).ok_or_else(|| {
                    TqsfError::Internal(format!("{} missing from the H variant", o.label))
                })?;
                variant = variant.max(1.0 - o.post_state.fidelity(&other.post_state));
            }
            let to_a = max_gap(
                &marginal(&rs, |l| (l.final_two_s(), l.two_m())),
                &marginal(&ra, |l| (l.final_two_s(), l.two_m())),
            );
            let mut memory: f64 = 0.0;
            for o in &rs.outcomes {
                let seq = o
                    .label
                    .path()
                    .map(|p| p.two_s_sequence().to_vec())
                    .unwrap_or_default();
                for (op, &two_s) in prefixes.iter().zip(&seq[1..]) {
                    let s = f64::from(two_s) / 2.0;
                    let image = op.apply(o.post_state.amplitudes());
                    memory = memory.max(residual(o.post_state.amplitudes(), &image, s * (s + 1.0)));
                }
            }
            let rd = deferred.run(psi)?;
            let path_key = |l: &OutcomeLabel| l.path().cloned();
            let deferred_gap = max_gap(&marginal(&rd, path_key), &marginal(&rs, path_key));
            let rt = tree.run_exact(psi)?;
            let tree_gap = max_gap(&marginal(&rt, path_key), &marginal(&rd, path_key));
            Ok([variant, to_a, memory, deferred_gap, tree_gap])
        })
        .collect();
    let mut worst = [0.0f64; 5];
    for r in results {
        for (w, v) in worst.iter_mut().zip(r?) {
            *w = w.max(v);
        }
    }
    Ok(vec![
        numeric(
            "method-b-variants",
            n,
            worst[0],
            1e-10,
            "S²_[j] and H_[j] registers agree",
        ),
        numeric(
            "method-b-marginal",
            n,
            worst[1],
            1e-10,
            "paths summed per (S, M) give method a",
        ),
        numeric(
            "method-b-path-memory",
            n,
            worst[2],
            1e-8,
            "post-states are prefix-spin eigenstates",
        ),
        numeric(
            "method-c-deferred",
            n,
            worst[3],
            1e-10,
            "deferred circuit gives the path marginal",
        ),
        numeric(
            "method-c-feedback",
            n,
            worst[4],
            1e-10,
            "feedback tree equals deferred circuit",
        ),
    ])
}

fn check_pair_sanity() -> Result<CheckResult> {
    let singlet = StateVector::normalized(vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 0.0),
    ])?
    .0;
    let circuit = RegisterCircuit::new(FilterMethod::A, 2, EvolutionMode::Exact)?;
    let p_singlet = circuit
        .run(&singlet)?
        .probability_of(&OutcomeLabel::Spin(SpinLabel { two_s: 0, two_m: 0 }));
    let p_triplet = circuit
        .run(&StateVector::zero(2)?)?
        .probability_of(&OutcomeLabel::Spin(SpinLabel { two_s: 2, two_m: 2 }));
    let err = (1.0 - p_singlet).abs().max((1.0 - p_triplet).abs());
    Ok(numeric(
        "singlet-triplet",
        2,
        err,
        1e-12,
        "singlet reads S=0, |00⟩ reads S=1, M=1",
    ))
}

/// Builds the method B-hj circuit with the H_[4] register at the loose size and expects the
/// aliasing to be refused.
fn check_aliasing() -> CheckResult {
    let name = "undersized-coupling-register";
    let r = loose_coupling_register_size(4);
    let layout = RegisterLayout::sized(FilterMethod::BHj, 4, |j| {
        if j == 4 {
            r
        } else {
            min_ancillas(AncillaKind::Coupling, j)
        }
    });
    let outcome = layout
        .and_then(|l| RegisterCircuit::with_layout(FilterMethod::BHj, l, EvolutionMode::Exact))
        .and_then(|c| c.check_registers());
    match outcome {
        Err(TqsfError::Configuration(msg)) => CheckResult {
            name: name.into(),
            n: 4,
            passed: true,
            max_error: None,
            detail: format!("{r}-bit H_[4] register refused as expected: {msg}"),
        },
        Err(e) => failed(name, 4, &e),
        Ok(()) => CheckResult {
            name: name.into(),
            n: 4,
            passed: false,
            max_error: None,
            detail: format!("{r}-bit H_[4] register was accepted"),
        },
    }
}

fn skipped(name: &str, n: usize, why: &str) -> CheckResult {
    CheckResult {
        name: name.into(),
        n,
        passed: true,
        max_error: None,
        detail: format!("skipped: {why}"),
    }
}

/// Runs the suite for n = 2..=n_max.
pub fn verify(n_max: usize) -> Result<VerifyReport> {
    if !(2..=VERIFY_MAX_QUBITS).contains(&n_max) {
        return input_err(format!(
            "n-max must lie in [2, {VERIFY_MAX_QUBITS}], got {n_max}"
        ));
    }
    let mut checks = vec![];
    let collect = |checks: &mut Vec<CheckResult>,
                   name: &str,
                   n: usize,
                   r: Result<Vec<CheckResult>>| {
        match r {
            Ok(mut v) => checks.append(&mut v),
            Err(e) => checks.push(failed(name, n, &e)),
        }
    };
    collect(
        &mut checks,
        "singlet-triplet",
        2,
        check_pair_sanity().map(|c| vec![c]),
    );
    for n in 2..=n_max {
        collect(
            &mut checks,
            "spin-spectrum",
            n,
            check_spectrum(n).map(|c| vec![c]),
        );
        collect(
            &mut checks,
            "coupling-identity",
            n,
            check_coupling_identity(n).map(|c| vec![c]),
        );
        let inputs = random_states(n, STATES_PER_SIZE)?;
        collect(&mut checks, "method-a", n, check_method_a(n, &inputs));
        let fits = RegisterLayout::for_method(FilterMethod::BHj, n).is_ok()
            && RegisterLayout::for_method(FilterMethod::BS2j, n).is_ok();
        if fits {
            collect(&mut checks, "method-b", n, check_method_b(n, &inputs));
        } else {
            checks.push(skipped(
                "method-b",
                n,
                "path registers exceed the simulator capacity",
            ));
        }
    }
    if n_max >= 4 {
        checks.push(check_aliasing());
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        n_max,
        passed,
        checks,
    })
}
