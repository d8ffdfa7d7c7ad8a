//! File formats: JSON state files, CSV/JSON emission of tables, bound
//! curves, figure data, and single-shot channel application.
//!
//! CSV numbers carry 17 significant digits so every double round-trips
//! bit-exactly across platforms.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{bound_linear, holevo_upper_bound, sample_bound_curve, BoundCurve, BoundKind};
use crate::channels::{boxplus_closed_form, SwapParams};
use crate::concavity::{h_two_valued, l_two_valued, parametric_gk_curve, ThresholdResult};
use crate::entropies::{ep_certified_max, pn_certified_max, von_neumann, EntropyFunctional};
use crate::error::{Error, Result};
use crate::states::DensityMatrix;

/// 17-significant-digit scientific formatting (round-trip exact for f64).
pub fn fmt_g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Output format for emitted tables and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::ParseError(format!("unknown format `{other}`"))),
        }
    }
}

/// Entropy display unit. Everything internal is nats; bits divide by log 2
/// at presentation only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EntropyUnit {
    Nats,
    Bits,
}

impl EntropyUnit {
    pub fn from_bits_flag(bits: bool) -> Self {
        if bits {
            EntropyUnit::Bits
        } else {
            EntropyUnit::Nats
        }
    }

    pub fn scale(&self, nats: f64) -> f64 {
        match self {
            EntropyUnit::Nats => nats,
            EntropyUnit::Bits => nats / std::f64::consts::LN_2,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            EntropyUnit::Nats => "nats",
            EntropyUnit::Bits => "bits",
        }
    }
}

/// On-disk state representation: row-major [re, im] pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        let d = rho.dim();
        let m = rho.matrix();
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                entries.push([m[(i, j)].re, m[(i, j)].im]);
            }
        }
        Self { dim: d, entries }
    }

    pub fn to_state(&self) -> Result<DensityMatrix> {
        if self.entries.len() != self.dim * self.dim {
            return Err(Error::ParseError(format!(
                "state file has {} entries, expected {}",
                self.entries.len(),
                self.dim * self.dim
            )));
        }
        let m = DMatrix::from_fn(self.dim, self.dim, |i, j| {
            let [re, im] = self.entries[i * self.dim + j];
            Complex64::new(re, im)
        });
        DensityMatrix::new(m)
    }
}

pub fn read_state_file(path: &std::path::Path) -> Result<DensityMatrix> {
    let text = std::fs::read_to_string(path)?;
    let file: StateFile =
        serde_json::from_str(&text).map_err(|e| Error::ParseError(e.to_string()))?;
    file.to_state()
}

/// Parse a `--sigma` spec: `mixed`, `diag:p1,p2,...`, or `file:PATH`.
pub fn parse_sigma_spec(spec: &str, d: usize) -> Result<DensityMatrix> {
    if spec == "mixed" {
        return Ok(DensityMatrix::maximally_mixed(d));
    }
    if let Some(list) = spec.strip_prefix("diag:") {
        let probs: Vec<f64> = list
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::BadSigmaSpec(format!("bad diagonal entry `{s}`: {e}")))
            })
            .collect::<Result<_>>()?;
        if probs.len() != d {
            return Err(Error::BadSigmaSpec(format!(
                "diagonal has {} entries, expected {d}",
                probs.len()
            )));
        }
        return DensityMatrix::from_diagonal(&probs)
            .map_err(|e| Error::BadSigmaSpec(e.to_string()));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let rho = read_state_file(std::path::Path::new(path))?;
        if rho.dim() != d {
            return Err(Error::BadSigmaSpec(format!(
                "state file has dimension {}, expected {d}",
                rho.dim()
            )));
        }
        return Ok(rho);
    }
    Err(Error::BadSigmaSpec(format!(
        "expected mixed | diag:p1,p2,... | file:PATH, got `{spec}`"
    )))
}

/// One row of the threshold table.
#[derive(Debug, Clone, Serialize)]
pub struct CmaxRow {
    pub d: usize,
    pub c_max: f64,
    pub x_star: f64,
    pub lb_closed_form: f64,
    pub inv_log_sq: f64,
    pub inv_d_minus_1: f64,
}

impl CmaxRow {
    pub fn from_threshold(t: &ThresholdResult) -> Self {
        Self {
            d: t.d,
            c_max: t.c_max,
            x_star: t.argmax_x,
            lb_closed_form: t.lower_bound,
            inv_log_sq: ep_certified_max(t.d),
            inv_d_minus_1: pn_certified_max(t.d),
        }
    }
}

pub fn cmax_table_csv(rows: &[CmaxRow]) -> String {
    let mut out = String::from("d,c_max,x_star,lb_closed_form,inv_log_sq,inv_d_minus_1\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.d,
            fmt_g17(r.c_max),
            fmt_g17(r.x_star),
            fmt_g17(r.lb_closed_form),
            fmt_g17(r.inv_log_sq),
            fmt_g17(r.inv_d_minus_1)
        ));
    }
    out
}

pub fn cmax_table_json(rows: &[CmaxRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

/// Bound curves plus the kinds that were requested but refused.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCurveReport {
    pub dim: usize,
    pub a: f64,
    pub unit: &'static str,
    pub curves: Vec<BoundCurve>,
    pub skipped: Vec<SkippedKind>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkippedKind {
    pub kind: BoundKind,
    pub reason: String,
}

/// Sample every requested bound kind over H0 in [0, log d]. Kinds that do
/// not apply at this dimension (the qubit-only bound for d != 2) are
/// reported as skipped rather than failing the run.
pub fn bound_curves(
    kinds: &[BoundKind],
    p: SwapParams,
    sigma: &DensityMatrix,
    samples: usize,
    unit: EntropyUnit,
) -> Result<BoundCurveReport> {
    let mut curves = Vec::new();
    let mut skipped = Vec::new();
    for &kind in kinds {
        if kind == BoundKind::QubitOptimal && sigma.dim() != 2 {
            skipped.push(SkippedKind {
                kind,
                reason: format!(
                    "domain error: the qubit-optimal bound needs d = 2, got d = {}",
                    sigma.dim()
                ),
            });
            continue;
        }
        let mut curve = sample_bound_curve(kind, p, sigma, samples)?;
        if unit == EntropyUnit::Bits {
            curve.sigma_entropy = unit.scale(curve.sigma_entropy);
            for (h0, g) in curve.samples.iter_mut() {
                *h0 = unit.scale(*h0);
                *g = unit.scale(*g);
            }
        }
        curves.push(curve);
    }
    Ok(BoundCurveReport {
        dim: sigma.dim(),
        a: p.a(),
        unit: unit.label(),
        curves,
        skipped,
    })
}

pub fn bound_curves_csv(report: &BoundCurveReport) -> String {
    let mut out = String::from("kind,h0,g\n");
    for curve in &report.curves {
        for &(h0, g) in &curve.samples {
            out.push_str(&format!(
                "{},{},{}\n",
                curve.kind.label(),
                fmt_g17(h0),
                fmt_g17(g)
            ));
        }
    }
    out
}

pub fn bound_curves_json(report: &BoundCurveReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("curves serialize");
    s.push('\n');
    s
}

/// Loci of (H, L) for the two-valued family at K = 6, one curve per
/// k in {1,...,5}. Endpoints are emitted through the same closed forms
/// that define them, so the lower end is exactly (log(K-k), log(K-k)^2)
/// and the upper end exactly (log K, (log K)^2).
#[derive(Debug, Clone, Serialize)]
pub struct Fig1Row {
    pub k: usize,
    pub x: f64,
    pub h: f64,
    pub l: f64,
}

pub fn figure1_data(samples: usize) -> Vec<Fig1Row> {
    assert!(samples >= 2);
    let big_k = 6usize;
    let cap = 1.0 / big_k as f64;
    let mut rows = Vec::new();
    for k in 1..big_k {
        for i in 0..samples {
            let x = cap * i as f64 / (samples - 1) as f64;
            let (h, l) = if i == 0 {
                let lg = ((big_k - k) as f64).ln();
                (lg, lg * lg)
            } else if i == samples - 1 {
                let lg = (big_k as f64).ln();
                (lg, lg * lg)
            } else {
                (h_two_valued(big_k, k, x), l_two_valued(big_k, k, x))
            };
            rows.push(Fig1Row { k, x, h, l });
        }
    }
    rows
}

pub fn figure1_csv(rows: &[Fig1Row]) -> String {
    let mut out = String::from("k,x,h,l\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.k,
            fmt_g17(r.x),
            fmt_g17(r.h),
            fmt_g17(r.l)
        ));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Fig2Row {
    pub g: f64,
    pub k: f64,
}

pub fn figure2_data(samples: usize) -> Vec<Fig2Row> {
    parametric_gk_curve(samples)
        .into_iter()
        .map(|(g, k)| Fig2Row { g, k })
        .collect()
}

pub fn figure2_csv(rows: &[Fig2Row]) -> String {
    let mut out = String::from("g,k\n");
    for r in rows {
        out.push_str(&format!("{},{}\n", fmt_g17(r.g), fmt_g17(r.k)));
    }
    out
}

pub fn json_rows<T: Serialize>(rows: &[T]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

/// Output of a single channel application: the combined state, its spectrum,
/// every certified functional value, and the linear-bound cross-check.
#[derive(Debug, Clone, Serialize)]
pub struct ChannelApplyOutput {
    pub dim: usize,
    pub a: f64,
    pub unit: &'static str,
    pub state: StateFile,
    pub spectrum: Vec<f64>,
    pub functionals: Vec<FunctionalValue>,
    pub output_entropy: f64,
    /// a H(rho) + (1-a) H(sigma); the output entropy can never fall below it.
    pub linear_lower_bound: f64,
    pub holevo_upper_bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FunctionalValue {
    pub label: String,
    pub value: f64,
}

pub fn channel_apply(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    p: SwapParams,
    unit: EntropyUnit,
) -> Result<ChannelApplyOutput> {
    let out = boxplus_closed_form(rho, sigma, p)?;
    let spectrum = out.spectrum()?;
    let d = out.dim();
    let h_out = von_neumann(&spectrum);
    let h_rho = von_neumann(&rho.spectrum()?);
    let h_sigma = von_neumann(&sigma.spectrum()?);
    let functionals = EntropyFunctional::certified_registry(d, &[0.0, 0.25, 0.5, 0.75, 0.9])
        .into_iter()
        .map(|f| {
            let value = f.evaluate(&spectrum)?;
            // entropy-like values are unit-scaled; EP and N are not entropies
            let scaled = match f {
                EntropyFunctional::EntropyPower { .. } | EntropyFunctional::PhotonNumber { .. } => {
                    value
                }
                _ => unit.scale(value),
            };
            Ok(FunctionalValue {
                label: f.label(),
                value: scaled,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChannelApplyOutput {
        dim: d,
        a: p.a(),
        unit: unit.label(),
        state: StateFile::from_state(&out),
        spectrum: spectrum.values().to_vec(),
        functionals,
        output_entropy: unit.scale(h_out),
        linear_lower_bound: unit.scale(bound_linear(h_rho, h_sigma, p.a())),
        holevo_upper_bound: unit.scale(holevo_upper_bound(p, sigma)?),
    })
}

pub fn channel_apply_json(out: &ChannelApplyOutput) -> String {
    let mut s = serde_json::to_string_pretty(out).expect("output serializes");
    s.push('\n');
    s
}

/// Long-format key,value CSV for a channel application.
pub fn channel_apply_csv(out: &ChannelApplyOutput) -> String {
    let mut s = String::from("key,value\n");
    s.push_str(&format!("dim,{}\n", out.dim));
    s.push_str(&format!("a,{}\n", fmt_g17(out.a)));
    s.push_str(&format!("unit,{}\n", out.unit));
    for i in 0..out.dim {
        for j in 0..out.dim {
            let [re, im] = out.state.entries[i * out.dim + j];
            s.push_str(&format!("entry_{i}_{j}_re,{}\n", fmt_g17(re)));
            s.push_str(&format!("entry_{i}_{j}_im,{}\n", fmt_g17(im)));
        }
    }
    for (i, v) in out.spectrum.iter().enumerate() {
        s.push_str(&format!("spectrum_{i},{}\n", fmt_g17(*v)));
    }
    for f in &out.functionals {
        s.push_str(&format!("{},{}\n", f.label, fmt_g17(f.value)));
    }
    s.push_str(&format!("output_entropy,{}\n", fmt_g17(out.output_entropy)));
    s.push_str(&format!(
        "linear_lower_bound,{}\n",
        fmt_g17(out.linear_lower_bound)
    ));
    s.push_str(&format!(
        "holevo_upper_bound,{}\n",
        fmt_g17(out.holevo_upper_bound)
    ));
    s
}
