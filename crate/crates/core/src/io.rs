//! Text emitters: sample CSV, plain PBM/PGM and `key=value` stats.
//!
//! Every writer produces LF-terminated ASCII and is a pure function of its
//! input, so identical patterns give identical bytes. Files are written to a
//! temporary sibling and renamed into place.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::analysis::StatsReport;
use crate::error::{Error, Result};
use crate::mask::{Mask, Window};
use crate::pattern::{Method, Sample, SamplingPattern};

pub const CSV_MAGIC: &str = "# kspace-sampler v1";
const CSV_HEADER: [&str; 6] = ["method", "encoding", "order", "frame", "ky", "kz"];
// plain netpbm lines must not exceed 70 characters
const MAX_LINE: usize = 70;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaskMode {
    /// ky against frame (planar methods).
    KyT,
    /// ky against kz, aggregated over frames (volumetric methods).
    KyKz,
}

impl MaskMode {
    pub fn for_pattern(pattern: &SamplingPattern) -> MaskMode {
        if pattern.method().is_volumetric() {
            MaskMode::KyKz
        } else {
            MaskMode::KyT
        }
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub fn format_samples_csv(pattern: &SamplingPattern) -> Result<Vec<u8>> {
    let mut buf = Vec::with_capacity(24 * (pattern.len() + 2));
    buf.extend_from_slice(CSV_MAGIC.as_bytes());
    buf.push(b'\n');
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(buf);
    let csv_err = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    let method = pattern.method().as_str();
    for s in pattern.samples() {
        w.write_record([
            method.to_string(),
            s.encoding.to_string(),
            s.order.to_string(),
            s.frame.to_string(),
            s.ky.to_string(),
            s.kz.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| Error::Parse(e.to_string()))
}

pub fn write_samples_csv(pattern: &SamplingPattern, path: &Path) -> Result<()> {
    write_atomic(path, &format_samples_csv(pattern)?)
}

/// Parse a sample file produced by [`write_samples_csv`].
pub fn parse_samples_csv(text: &[u8]) -> Result<(Method, Vec<Sample>)> {
    let body = text
        .strip_prefix(CSV_MAGIC.as_bytes())
        .and_then(|rest| rest.strip_prefix(b"\n"))
        .ok_or_else(|| Error::Parse(format!("first line must be `{CSV_MAGIC}`")))?;
    let mut rdr = csv::ReaderBuilder::new().from_reader(body);
    let header = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Parse(format!("unexpected header {header:?}")));
    }
    let mut method = None;
    let mut samples = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let m = Method::parse(&rec[0])
            .ok_or_else(|| Error::Parse(format!("row {}: unknown method {:?}", line + 1, &rec[0])))?;
        if *method.get_or_insert(m) != m {
            return Err(Error::Parse(format!("row {}: mixed methods", line + 1)));
        }
        let field = |i: usize| -> Result<usize> {
            rec[i]
                .parse()
                .map_err(|_| Error::Parse(format!("row {}: bad {} {:?}", line + 1, CSV_HEADER[i], &rec[i])))
        };
        samples.push(Sample {
            encoding: field(1)?,
            order: field(2)?,
            frame: field(3)?,
            ky: field(4)?,
            kz: field(5)?,
        });
    }
    let method = method.ok_or_else(|| Error::Parse("no samples".into()))?;
    Ok((method, samples))
}

fn wrapped<I: IntoIterator<Item = String>>(out: &mut String, values: I) {
    let mut line_len = 0;
    for v in values {
        if line_len > 0 && line_len + 1 + v.len() > MAX_LINE {
            out.push('\n');
            line_len = 0;
        }
        if line_len > 0 {
            out.push(' ');
            line_len += 1;
        }
        out.push_str(&v);
        line_len += v.len();
    }
    out.push('\n');
}

/// Plain PBM (P1) of the binary view: one image row per ky.
pub fn format_pbm(mask: &Mask) -> String {
    let mut out = format!("P1\n{} {}\n", mask.cols(), mask.rows());
    for r in 0..mask.rows() {
        wrapped(&mut out, mask.row(r).iter().map(|&c| u8::from(c > 0).to_string()));
    }
    out
}

/// Plain PGM (P2) of the counts, maxval = largest count.
pub fn format_pgm(mask: &Mask) -> String {
    let maxval = mask.max_count().max(1);
    let mut out = format!("P2\n{} {}\n{}\n", mask.cols(), mask.rows(), maxval);
    for r in 0..mask.rows() {
        wrapped(&mut out, mask.row(r).iter().map(u32::to_string));
    }
    out
}

pub fn mask_for_mode(pattern: &SamplingPattern, mode: MaskMode, encoding: usize, window: Option<Window>) -> Result<Mask> {
    let volumetric = pattern.method().is_volumetric();
    match (mode, volumetric) {
        (MaskMode::KyT, false) => Mask::kyt(pattern, encoding, window),
        (MaskMode::KyKz, true) => Mask::kykz(pattern, encoding, window),
        (MaskMode::KyT, true) => Err(Error::Domain(format!(
            "ky–t mask requested for volumetric method {}",
            pattern.method()
        ))),
        (MaskMode::KyKz, false) => Err(Error::Domain(format!(
            "ky–kz mask requested for planar method {}",
            pattern.method()
        ))),
    }
}

pub fn write_mask_pbm(pattern: &SamplingPattern, path: &Path, mode: MaskMode, encoding: usize) -> Result<()> {
    let mask = mask_for_mode(pattern, mode, encoding, None)?;
    write_atomic(path, format_pbm(&mask).as_bytes())
}

/// Count grid over an acquisition window (ky–t or ky–kz by method).
pub fn render_pgm(pattern: &SamplingPattern, path: &Path, window: Option<Window>, encoding: usize) -> Result<()> {
    let mask = mask_for_mode(pattern, MaskMode::for_pattern(pattern), encoding, window)?;
    write_atomic(path, format_pgm(&mask).as_bytes())
}

/// ky against acquisition order (planar methods).
pub fn render_order_trace(pattern: &SamplingPattern, path: &Path, window: Option<Window>, encoding: usize) -> Result<()> {
    if pattern.method().is_volumetric() {
        return Err(Error::Domain("order traces are drawn for planar methods only".into()));
    }
    let mask = Mask::order_trace(pattern, encoding, window)?;
    write_atomic(path, format_pgm(&mask).as_bytes())
}

fn joined<T: ToString>(values: &[T]) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// Flat `key=value` lines sorted by key.
pub fn format_stats(pattern: &SamplingPattern, report: &StatsReport) -> String {
    let g = pattern.grid();
    let mut kv = BTreeMap::new();
    kv.insert("method".to_string(), pattern.method().to_string());
    kv.insert("n_y".into(), g.n_y().to_string());
    kv.insert("n_z".into(), g.n_z().to_string());
    kv.insert("frames".into(), g.frames().to_string());
    kv.insert("encodings".into(), g.encodings().to_string());
    kv.insert("total_samples".into(), report.total_samples.to_string());
    kv.insert("collision_count".into(), report.collision_count.to_string());
    kv.insert("coverage_fraction".into(), format!("{:.6}", report.coverage_fraction));
    kv.insert("density_histogram".into(), joined(&report.density_histogram));
    if let Some(cells) = &report.ring_cells {
        kv.insert("ring_cells".into(), joined(cells));
    }
    for (e, counts) in report.per_frame_counts.iter().enumerate() {
        kv.insert(format!("frame_counts_e{}", e + 1), joined(counts));
    }
    for (e, j) in report.jump_stats.iter().enumerate() {
        kv.insert(format!("jump_max_e{}", e + 1), format!("{:.6}", j.max));
        kv.insert(format!("jump_mean_e{}", e + 1), format!("{:.6}", j.mean));
        kv.insert(format!("jump_std_e{}", e + 1), format!("{:.6}", j.std));
    }
    let mut out = String::new();
    for (k, v) in kv {
        let _ = writeln!(out, "{k}={v}");
    }
    out
}

pub fn write_stats(pattern: &SamplingPattern, report: &StatsReport, path: &Path) -> Result<()> {
    write_atomic(path, format_stats(pattern, report).as_bytes())
}
