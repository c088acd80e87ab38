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

//! Experiment configuration, result documents and the file formats behind the `tqsf` binary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{input_err, Result, TqsfError};
use crate::evolution::{EvolutionMode, PhaseUnitary};
use crate::filter::{
    spectral_register_distribution, Filter, FilterMethod, FilterRun, RegisterLayout,
    SequentialFilter, UnresolvedOutcome,
};
use crate::spin::{min_ancillas, number_operator, AncillaKind};
use crate::states;
use crate::statevector::{StateVector, MAX_QUBITS};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 12345;

/// Trotter slices used when `--mode trotter` is given without a step count.
pub const DEFAULT_TROTTER_STEPS: usize = 64;

pub const SCHEMA: &str = "tqsf-result/1";

/// Amplitude files whose norm differs from 1 by more than this are reported.
const NORM_WARNING: f64 = 1e-6;

/// Where the initial state comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum StateSpec {
    Hadamard,
    HadamardX13,
    /// Most significant qubit first.
    Bits(String),
    /// One `real imag` pair per line.
    File(PathBuf),
}

impl StateSpec {
    /// `hadamard`, `hadamard-x13`, a 0/1 string, or otherwise a path to an amplitude file.
    pub fn parse(text: &str) -> Self {
        match text {
            "hadamard" => StateSpec::Hadamard,
            "hadamard-x13" => StateSpec::HadamardX13,
            t if !t.is_empty() && t.chars().all(|c| c == '0' || c == '1') => {
                StateSpec::Bits(t.to_string())
            }
            t => StateSpec::File(PathBuf::from(t)),
        }
    }

    pub fn build(&self, n: usize) -> Result<StateVector> {
        match self {
            StateSpec::Hadamard => states::hadamard(n),
            StateSpec::HadamardX13 => states::hadamard_x13(n),
            StateSpec::Bits(b) => StateVector::new_basis_state(n, b),
            StateSpec::File(path) => {
                let text = fs::read_to_string(path).map_err(|e| {
                    TqsfError::Input(format!("cannot read {}: {e}", path.display()))
                })?;
                load_amplitudes(&text, n)
            }
        }
    }
}

/// Parses an amplitude file and normalizes it, warning when the stored norm is off.
pub fn load_amplitudes(text: &str, n: usize) -> Result<StateVector> {
    let mut amps = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| TqsfError::Input(format!("line {}: bad number {s:?}", line_no + 1)))
        };
        let amp = match parts.as_slice() {
            [re] => Complex64::new(parse(re)?, 0.0),
            [re, im] => Complex64::new(parse(re)?, parse(im)?),
            _ => return input_err(format!("line {}: expected `real imag`", line_no + 1)),
        };
        amps.push(amp);
    }
    if amps.len() != 1 << n {
        return input_err(format!(
            "amplitude file has {} entries, {n} qubits need {}",
            amps.len(),
            1usize << n
        ));
    }
    let (state, norm) = StateVector::normalized(amps)?;
    if (norm - 1.0).abs() > NORM_WARNING {
        log::warn!("amplitude file norm is {norm}; renormalized");
    }
    Ok(state)
}

/// One `tqsf run` invocation.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub initial_state: StateSpec,
    pub method: FilterMethod,
    pub mode: EvolutionMode,
    /// 0 = exact enumeration only.
    pub shots: u64,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return input_err("n must be at least 1");
        }
        if self.n > MAX_QUBITS {
            return Err(TqsfError::Capacity {
                what: "system qubits",
                requested: self.n,
                limit: MAX_QUBITS,
            });
        }
        if self.shots == 0 && self.mode != EvolutionMode::Exact {
            return input_err("shots = 0 (exact enumeration) requires --mode exact");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

pub fn tool_info() -> ToolInfo {
    ToolInfo {
        name: "tqsf",
        version: env!("CARGO_PKG_VERSION"),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RegisterInfo {
    pub name: String,
    pub size: usize,
    pub qubits: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LayoutInfo {
    pub system: Vec<usize>,
    pub registers: Vec<RegisterInfo>,
    pub total_qubits: usize,
    /// How `joint_bits` is assembled.
    pub bit_order: String,
}

impl From<&RegisterLayout> for LayoutInfo {
    fn from(l: &RegisterLayout) -> Self {
        let names: Vec<&str> = l.registers.iter().map(|r| r.name.as_str()).collect();
        LayoutInfo {
            system: l.system.clone(),
            registers: l
                .registers
                .iter()
                .map(|r| RegisterInfo {
                    name: r.name.clone(),
                    size: r.size(),
                    qubits: r.qubits.clone(),
                })
                .collect(),
            total_qubits: l.total_qubits(),
            bit_order: format!(
                "qubit 0 is the least significant bit of a basis index; every bitstring is written \
                 most significant bit first; joint_bits concatenates registers in the order {}",
                names.join(", ")
            ),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PathInfo {
    /// 1 = spin increase, leftmost = second qubit.
    pub bits: String,
    /// 0 = spin increase, rightmost = second qubit.
    pub bits_right_to_left: String,
    pub two_s_sequence: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OutcomeRow {
    pub label: String,
    pub two_s: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_m: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathInfo>,
    pub raw_bits: BTreeMap<String, String>,
    pub joint_bits: String,
    pub probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnresolvedRow {
    pub raw_bits: BTreeMap<String, String>,
    pub joint_bits: String,
    pub probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Totals {
    pub probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<u64>,
}

/// Canonical JSON output of `tqsf run`.
#[derive(Clone, Debug, Serialize)]
pub struct ResultDocument {
    pub schema: &'static str,
    pub tool: ToolInfo,
    pub timestamp: String,
    pub config: ExperimentConfig,
    pub layout: LayoutInfo,
    pub outcomes: Vec<OutcomeRow>,
    pub unresolved: Vec<UnresolvedRow>,
    pub totals: Totals,
}

fn raw_bits(readings: &[crate::filter::RegisterReading]) -> BTreeMap<String, String> {
    readings
        .iter()
        .map(|r| (r.register.clone(), r.bits.clone()))
        .collect()
}

fn outcome_row(o: &crate::filter::FilterOutcome, count: Option<u64>) -> OutcomeRow {
    OutcomeRow {
        label: o.label.to_string(),
        two_s: o.label.final_two_s(),
        two_m: o.label.two_m(),
        path: o.label.path().map(|p| PathInfo {
            bits: p.bit_string(),
            bits_right_to_left: p.right_to_left_string(),
            two_s_sequence: p.two_s_sequence().to_vec(),
        }),
        raw_bits: raw_bits(&o.readings),
        joint_bits: o.joint_bits(),
        probability: o.probability,
        count,
    }
}

fn unresolved_row(u: &UnresolvedOutcome, count: Option<u64>) -> UnresolvedRow {
    UnresolvedRow {
        raw_bits: raw_bits(&u.readings),
        joint_bits: u.joint_bits(),
        probability: u.probability,
        count,
    }
}

/// Runs the configured experiment. Also returns the in-memory run for callers that need states.
pub fn run(config: &ExperimentConfig) -> Result<(ResultDocument, FilterRun)> {
    config.validate()?;
    let state = config.initial_state.build(config.n)?;
    let filter = Filter::new(config.method, config.n, config.mode)?;
    let run = filter.run(&state)?;
    let (counts, unresolved_counts): (Vec<Option<u64>>, Vec<Option<u64>>) = if config.shots == 0 {
        (
            vec![None; run.outcomes.len()],
            vec![None; run.unresolved.len()],
        )
    } else if config.method == FilterMethod::C {
        let sequential = SequentialFilter::new(config.n, config.mode)?;
        let hist = sequential.sample_paths(&state, config.shots, config.seed)?;
        let counts = run
            .outcomes
            .iter()
            .map(|o| {
                Some(
                    o.label
                        .path()
                        .and_then(|p| hist.get(p))
                        .copied()
                        .unwrap_or(0),
                )
            })
            .collect();
        (counts, Vec::new())
    } else {
        let c = run.sample(config.shots, config.seed)?;
        (
            c.outcomes.into_iter().map(Some).collect(),
            c.unresolved.into_iter().map(Some).collect(),
        )
    };
    let outcomes: Vec<OutcomeRow> = run
        .outcomes
        .iter()
        .zip(&counts)
        .map(|(o, &c)| outcome_row(o, c))
        .collect();
    let unresolved: Vec<UnresolvedRow> = run
        .unresolved
        .iter()
        .zip(&unresolved_counts)
        .map(|(u, &c)| unresolved_row(u, c))
        .collect();
    let totals = Totals {
        probability: run.total_probability(),
        counts: (config.shots > 0).then(|| {
            counts.iter().flatten().sum::<u64>() + unresolved_counts.iter().flatten().sum::<u64>()
        }),
    };
    let doc = ResultDocument {
        schema: SCHEMA,
        tool: tool_info(),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        config: config.clone(),
        layout: LayoutInfo::from(&run.layout),
        outcomes,
        unresolved,
        totals,
    };
    Ok((doc, run))
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> TqsfError {
    TqsfError::Input(format!("cannot write {}: {e}", path.display()))
}

pub fn write_json(doc: &ResultDocument, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(doc)
        .map_err(|e| TqsfError::Internal(format!("serializing result: {e}")))?;
    fs::write(path, text + "\n").map_err(|e| io_err(path, e))
}

/// Histogram as CSV: label, raw_bits, probability, count.
pub fn write_csv(doc: &ResultDocument, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| io_err(path, e))?;
    w.write_record(["label", "raw_bits", "probability", "count"])
        .map_err(|e| io_err(path, e))?;
    for row in &doc.outcomes {
        w.write_record([
            row.label.clone(),
            row.joint_bits.clone(),
            format!("{:.12}", row.probability),
            row.count.map(|c| c.to_string()).unwrap_or_default(),
        ])
        .map_err(|e| io_err(path, e))?;
    }
    for row in &doc.unresolved {
        w.write_record([
            "unresolved".to_string(),
            row.joint_bits.clone(),
            format!("{:.12}", row.probability),
            row.count.map(|c| c.to_string()).unwrap_or_default(),
        ])
        .map_err(|e| io_err(path, e))?;
    }
    w.flush().map_err(|e| io_err(path, e))
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Bar chart of outcome probabilities (sampled frequencies when shots were taken).
pub fn render_svg(doc: &ResultDocument) -> String {
    let shots = doc.totals.counts.filter(|&c| c > 0);
    let values: Vec<(String, f64)> = doc
        .outcomes
        .iter()
        .map(|r| {
            let v = match (shots, r.count) {
                (Some(total), Some(c)) => c as f64 / total as f64,
                _ => r.probability,
            };
            (r.label.clone(), v)
        })
        .collect();
    let (bar, gap, left, top, height) = (28.0, 10.0, 50.0, 20.0, 220.0);
    let width = left + values.len() as f64 * (bar + gap) + gap;
    let max = values.iter().map(|v| v.1).fold(0.0, f64::max).max(1e-12);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="sans-serif" font-size="10">"#,
        w = width.max(200.0),
        h = top + height + 140.0
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{left}" y1="{y}" x2="{x2}" y2="{y}" stroke="black"/>"#,
        y = top + height,
        x2 = width
    );
    let _ = writeln!(svg, r#"<text x="4" y="{y}">{max:.3}</text>"#, y = top + 4.0);
    for (i, (label, v)) in values.iter().enumerate() {
        let x = left + gap + i as f64 * (bar + gap);
        let h = height * v / max;
        let _ = writeln!(
            svg,
            r##"<rect x="{x}" y="{y}" width="{bar}" height="{h}" fill="#4c72b0"><title>{t}: {v:.6}</title></rect>"##,
            y = top + height - h,
            t = escape_xml(label)
        );
        let _ = writeln!(
            svg,
            r#"<text transform="translate({tx},{ty}) rotate(60)">{t}</text>"#,
            tx = x + bar / 2.0,
            ty = top + height + 8.0,
            t = escape_xml(label)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

pub fn write_svg(doc: &ResultDocument, path: &Path) -> Result<()> {
    fs::write(path, render_svg(doc)).map_err(|e| io_err(path, e))
}

/// Summary of a sampling run of `rng_demo`.
#[derive(Clone, Debug, Serialize)]
pub struct RngSummary {
    pub n: usize,
    pub shots: u64,
    pub seed: u64,
    pub register_size: usize,
    /// `circuit` when system and register fit the simulator, otherwise `spectral`.
    pub route: &'static str,
    /// P(k) for k = 0..=n.
    pub probabilities: Vec<f64>,
    pub mean: f64,
    pub variance: f64,
}

/// Distribution of the z-register on |+⟩^⊗n, and which route produced it.
pub fn binomial_register(n: usize) -> Result<(Vec<f64>, usize, &'static str)> {
    if n == 0 {
        return input_err("n must be at least 1");
    }
    let r = min_ancillas(AncillaKind::Number, n);
    let unitary = PhaseUnitary::new(
        number_operator(n)?,
        1.0 / (1u64 << r) as f64,
        EvolutionMode::Exact,
    )?;
    let state = states::hadamard(n)?;
    let (probs, route) = if n + r <= MAX_QUBITS {
        let mut joint = state.with_ancillas(r)?;
        let system: Vec<usize> = (0..n).collect();
        let register: Vec<usize> = (n..n + r).collect();
        crate::filter::run_qpe(&mut joint, &system, &register, &unitary)?;
        (joint.register_probabilities(&register)?, "circuit")
    } else {
        (
            spectral_register_distribution(&state, &unitary, r)?,
            "spectral",
        )
    };
    Ok((probs[..=n].to_vec(), r, route))
}

/// Samples x_k = k/n from the z-register of the Hadamard state and writes `shot,k,x` rows.
pub fn rng_demo(n: usize, shots: u64, seed: u64, out: Option<&Path>) -> Result<RngSummary> {
    if shots == 0 {
        return input_err("shots must be at least 1");
    }
    let (probs, r, route) = binomial_register(n)?;
    let dist = WeightedIndex::new(&probs)
        .map_err(|e| TqsfError::Internal(format!("register distribution: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut writer = match out {
        Some(p) => Some(csv::Writer::from_path(p).map_err(|e| io_err(p, e))?),
        None => None,
    };
    if let (Some(w), Some(p)) = (writer.as_mut(), out) {
        w.write_record(["shot", "k", "x"])
            .map_err(|e| io_err(p, e))?;
    }
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for shot in 0..shots {
        let k = dist.sample(&mut rng);
        let x = k as f64 / n as f64;
        sum += x;
        sum_sq += x * x;
        if let (Some(w), Some(p)) = (writer.as_mut(), out) {
            w.write_record([shot.to_string(), k.to_string(), x.to_string()])
                .map_err(|e| io_err(p, e))?;
        }
    }
    if let (Some(w), Some(p)) = (writer.as_mut(), out) {
        w.flush().map_err(|e| io_err(p, e))?;
    }
    let mean = sum / shots as f64;
    let variance = if shots > 1 {
        (sum_sq - shots as f64 * mean * mean) / (shots - 1) as f64
    } else {
        0.0
    };
    Ok(RngSummary {
        n,
        shots,
        seed,
        register_size: r,
        route,
        probabilities: probs,
        mean,
        variance,
    })
}

/// Text table for `tqsf layout`.
pub fn describe_layout(method: FilterMethod, n: usize) -> Result<String> {
    let layout = RegisterLayout::for_method(method, n)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "method {method}, n = {n}: {} qubits ({} system + {} ancilla)",
        layout.total_qubits(),
        layout.num_system(),
        layout.num_ancillas()
    );
    let _ = writeln!(out, "{:<10} {:>4}  qubits", "register", "size");
    let list = |q: &[usize]| {
        q.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let _ = writeln!(out, "{:<10} {:>4}  {}", "system", n, list(&layout.system));
    for r in &layout.registers {
        let _ = writeln!(out, "{:<10} {:>4}  {}", r.name, r.size(), list(&r.qubits));
    }
    let names: Vec<&str> = layout.registers.iter().map(|r| r.name.as_str()).collect();
    let _ = writeln!(
        out,
        "bitstrings: registers in the order {}, each most significant bit first",
        names.join(" ")
    );
    if method == FilterMethod::C {
        let _ = writeln!(
            out,
            "the hadamard ancilla is measured and reused at every step; its record is the path bits"
        );
    }
    Ok(out)
}

/// Short human-readable summary of a run for the terminal.
pub fn summarize(doc: &ResultDocument) -> String {
    let mut out = String::new();
    for row in &doc.outcomes {
        let _ = write!(out, "{:<28} {:>14.10}", row.label, row.probability);
        if let Some(c) = row.count {
            let _ = write!(out, " {c:>10}");
        }
        out.push('\n');
    }
    if !doc.unresolved.is_empty() {
        let p: f64 = doc.unresolved.iter().map(|u| u.probability).sum();
        let _ = writeln!(out, "{:<28} {:>14.10}", "unresolved", p);
    }
    out
}
