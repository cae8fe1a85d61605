//! CSV and JSON writers. Floats in CSV carry 17 significant digits.

use std::io::Write;

use serde::Serialize;

use crate::config::Format;
use crate::run::{BoundStateRow, ResonanceRow, SweepReport};

pub const SWEEP_HEADER: &str = "param,re_t,im_t,T,re_r,im_r,R";

fn g17(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize)]
struct SweepRowJson {
    param: f64,
    re_t: f64,
    im_t: f64,
    #[serde(rename = "T")]
    transmission: f64,
    re_r: f64,
    im_r: f64,
    #[serde(rename = "R")]
    reflection: f64,
}

#[derive(Serialize)]
struct SkippedJson<'a> {
    param: f64,
    reason: &'a str,
}

#[derive(Serialize)]
struct SweepJson<'a> {
    rows: Vec<SweepRowJson>,
    skipped: Vec<SkippedJson<'a>>,
}

pub fn write_sweep<W: Write + ?Sized>(
    out: &mut W,
    report: &SweepReport,
    format: Format,
) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{SWEEP_HEADER}")?;
            for (p, res) in &report.rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    g17(*p),
                    g17(res.t.re),
                    g17(res.t.im),
                    g17(res.transmission),
                    g17(res.r.re),
                    g17(res.r.im),
                    g17(res.reflection)
                )?;
            }
            Ok(())
        }
        Format::Json => {
            let doc = SweepJson {
                rows: report
                    .rows
                    .iter()
                    .map(|(p, res)| SweepRowJson {
                        param: *p,
                        re_t: res.t.re,
                        im_t: res.t.im,
                        transmission: res.transmission,
                        re_r: res.r.re,
                        im_r: res.r.im,
                        reflection: res.reflection,
                    })
                    .collect(),
                skipped: report
                    .skipped
                    .iter()
                    .map(|(p, reason)| SkippedJson { param: *p, reason })
                    .collect(),
            };
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)
        }
    }
}

/// Skipped singular points, one `param,reason` line each.
pub fn write_skip_log<W: Write + ?Sized>(
    out: &mut W,
    skipped: &[(f64, String)],
) -> std::io::Result<()> {
    writeln!(out, "param,reason")?;
    for (p, reason) in skipped {
        writeln!(out, "{},\"{}\"", g17(*p), reason.replace('"', "'"))?;
    }
    Ok(())
}

pub fn write_resonances<W: Write + ?Sized>(
    out: &mut W,
    rows: &[ResonanceRow],
    format: Format,
) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "kind,n,k_res,width,re_omega,im_omega,removable")?;
            for r in rows {
                let opt = |v: Option<f64>| v.map(g17).unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.kind,
                    r.n,
                    g17(r.k_res),
                    g17(r.width),
                    opt(r.omega_re),
                    opt(r.omega_im),
                    r.removable
                )?;
            }
            Ok(())
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)
        }
    }
}

pub fn write_bound_states<W: Write + ?Sized>(
    out: &mut W,
    rows: &[BoundStateRow],
    format: Format,
) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "n_wells,kappa,energy_ev")?;
            for r in rows {
                writeln!(out, "{},{},{}", r.n_wells, g17(r.kappa), g17(r.energy_ev))?;
            }
            Ok(())
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)
        }
    }
}
