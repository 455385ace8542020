//! Fixed-schema CSV files. Comma separated, `\n` line endings, no quoting;
//! reals use six decimals and absent values are empty fields.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ids::{ChannelId, NodeId, PacketId, PrefixId};
use crate::metrics::{LoadSample, PacketRecord, RunSummary};
use crate::protocol::{parse_route, route_string};

pub const LOADS_HEADER: &str = "run_id,time_s,channel_id,from,to,load_mbps";
pub const PACKETS_HEADER: &str =
    "run_id,packet_id,kind,prefix_id,chunk_index,src,dst,created_s,terminated_s,outcome,route";
pub const SUMMARY_HEADER: &str = "run_id,mode,interest_count,seed,avg_delivery_s,delivered_count,dropped_count,\
unterminated_count,offered_load_mbps,avg_load_mbps,std_load_mbps,smoothing_window,warmup_s,cooldown_start_s";
pub const HISTOGRAM_HEADER: &str = "bin_start_s,count";
pub const BATCH_HEADER: &str = "run_id,seed,mode,avg_delivery_s,std_load_mbps,offered_load_mbps,dropped";

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_default()
}

pub fn write_loads<W: Write>(mut w: W, run_id: u32, loads: &[LoadSample]) -> io::Result<()> {
    writeln!(w, "{LOADS_HEADER}")?;
    let mut rows: Vec<&LoadSample> = loads.iter().collect();
    rows.sort_by(|a, b| a.time.total_cmp(&b.time).then(a.channel.cmp(&b.channel)));
    for s in rows {
        writeln!(
            w,
            "{run_id},{:.6},{},{},{},{:.6}",
            s.time, s.channel, s.from, s.to, s.load_mbps
        )?;
    }
    Ok(())
}

pub fn write_packets<W: Write>(mut w: W, run_id: u32, packets: &[PacketRecord]) -> io::Result<()> {
    writeln!(w, "{PACKETS_HEADER}")?;
    let mut rows: Vec<&PacketRecord> = packets.iter().collect();
    rows.sort_by_key(|p| p.id);
    for p in rows {
        writeln!(
            w,
            "{run_id},{},{},{},{},{},{},{:.6},{},{},{}",
            p.id,
            p.kind,
            p.prefix,
            p.chunk,
            p.src,
            p.dst,
            p.created_at,
            opt(p.terminated_at),
            p.outcome,
            route_string(&p.route)
        )?;
    }
    Ok(())
}

pub fn write_summary<W: Write>(mut w: W, summaries: &[RunSummary]) -> io::Result<()> {
    writeln!(w, "{SUMMARY_HEADER}")?;
    for s in summaries {
        let st = &s.stats;
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{:.6},{:.6},{:.6},{},{:.6},{:.6}",
            s.run_id,
            s.mode,
            s.interest_count,
            s.seed,
            opt(st.avg_delivery_s),
            st.delivered,
            st.dropped,
            st.unterminated,
            st.offered_load_mbps,
            st.avg_load_mbps,
            st.std_load_mbps,
            s.smoothing_window,
            s.warmup_s,
            s.cooldown_start_s
        )?;
    }
    Ok(())
}

pub fn write_histogram<W: Write>(mut w: W, bins: &[(f64, usize)]) -> io::Result<()> {
    writeln!(w, "{HISTOGRAM_HEADER}")?;
    for (start, count) in bins {
        writeln!(w, "{start:.6},{count}")?;
    }
    Ok(())
}

/// Per-run averages for one `(seed, mode)` pair of a batch.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchRow {
    pub run_id: u32,
    pub seed: u64,
    pub mode: String,
    pub avg_delivery_s: Option<f64>,
    pub std_load_mbps: f64,
    pub offered_load_mbps: f64,
    pub dropped: usize,
}

impl From<&RunSummary> for BatchRow {
    fn from(s: &RunSummary) -> Self {
        BatchRow {
            run_id: s.run_id,
            seed: s.seed,
            mode: s.mode.clone(),
            avg_delivery_s: s.stats.avg_delivery_s,
            std_load_mbps: s.stats.std_load_mbps,
            offered_load_mbps: s.stats.offered_load_mbps,
            dropped: s.stats.dropped,
        }
    }
}

pub fn write_batch<W: Write>(mut w: W, rows: &[BatchRow]) -> io::Result<()> {
    writeln!(w, "{BATCH_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{:.6},{:.6},{}",
            r.run_id,
            r.seed,
            r.mode,
            opt(r.avg_delivery_s),
            r.std_load_mbps,
            r.offered_load_mbps,
            r.dropped
        )?;
    }
    Ok(())
}

/// Paths of the files written for one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunFiles {
    pub loads: PathBuf,
    pub packets: PathBuf,
    pub summary: PathBuf,
}

/// Renders a file into memory first, then writes it in one go.
pub fn csv_file(path: &Path, body: impl FnOnce(&mut Vec<u8>) -> io::Result<()>) -> Result<()> {
    let mut buf = Vec::new();
    body(&mut buf).map_err(|e| Error::io(path, e))?;
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}

/// Writes loads.csv, packets.csv and summary.csv into `dir`.
pub fn write_csv(dir: &Path, loads: &[LoadSample], packets: &[PacketRecord], summary: &RunSummary) -> Result<RunFiles> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let files = RunFiles {
        loads: dir.join("loads.csv"),
        packets: dir.join("packets.csv"),
        summary: dir.join("summary.csv"),
    };
    csv_file(&files.loads, |w| write_loads(w, summary.run_id, loads))?;
    csv_file(&files.packets, |w| write_packets(w, summary.run_id, packets))?;
    csv_file(&files.summary, |w| write_summary(w, std::slice::from_ref(summary)))?;
    Ok(files)
}

fn rows<'a>(text: &'a str, header: &str, width: usize) -> Result<impl Iterator<Item = (usize, Vec<&'a str>)>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == header => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                reason: format!("expected header `{header}`"),
            })
        }
    }
    let rows: Vec<(usize, Vec<&str>)> = lines.map(|(i, l)| (i + 1, l.split(',').collect())).collect();
    if let Some((line, r)) = rows.iter().find(|(_, r)| r.len() != width) {
        return Err(Error::Parse {
            line: *line,
            reason: format!("expected {width} fields, found {}", r.len()),
        });
    }
    Ok(rows.into_iter())
}

fn field<T: FromStr>(line: usize, raw: &str, name: &str) -> Result<T> {
    raw.parse().map_err(|_| Error::Parse {
        line,
        reason: format!("bad {name} `{raw}`"),
    })
}

/// Parses loads.csv into `(run_id, sample)` pairs.
pub fn read_loads(text: &str) -> Result<Vec<(u32, LoadSample)>> {
    rows(text, LOADS_HEADER, 6)?
        .map(|(line, f)| {
            Ok((
                field(line, f[0], "run_id")?,
                LoadSample {
                    time: field(line, f[1], "time_s")?,
                    channel: ChannelId(field(line, f[2], "channel_id")?),
                    from: NodeId(field(line, f[3], "from")?),
                    to: NodeId(field(line, f[4], "to")?),
                    load_mbps: field(line, f[5], "load_mbps")?,
                },
            ))
        })
        .collect()
}

/// Parses packets.csv into `(run_id, record)` pairs.
pub fn read_packets(text: &str) -> Result<Vec<(u32, PacketRecord)>> {
    rows(text, PACKETS_HEADER, 11)?
        .map(|(line, f)| {
            let terminated_at = if f[8].is_empty() {
                None
            } else {
                Some(field(line, f[8], "terminated_s")?)
            };
            Ok((
                field(line, f[0], "run_id")?,
                PacketRecord {
                    id: PacketId(field(line, f[1], "packet_id")?),
                    kind: field(line, f[2], "kind")?,
                    prefix: PrefixId(field(line, f[3], "prefix_id")?),
                    chunk: field(line, f[4], "chunk_index")?,
                    src: NodeId(field(line, f[5], "src")?),
                    dst: NodeId(field(line, f[6], "dst")?),
                    created_at: field(line, f[7], "created_s")?,
                    terminated_at,
                    outcome: field(line, f[9], "outcome")?,
                    route: parse_route(f[10]).map_err(|_| Error::Parse {
                        line,
                        reason: format!("bad route `{}`", f[10]),
                    })?,
                },
            ))
        })
        .collect()
}
