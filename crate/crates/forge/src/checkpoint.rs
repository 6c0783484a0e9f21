//! Text checkpoints of an exploration.
//!
//! ```text
//! OMEGAFORGE/1
//! machine <sha256 of the machine reference, hex>
//! budget max_len=<L> max_steps=<S>
//! <bits> <STATUS> <output|-> <steps>      one line per node, sorted by bits
//! checksum sha256:<hex of every record line, newlines included>
//! ```
//!
//! An empty bit string is written `~`; an output past the cap is `*`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use omegaforge_core::bitvm::{Output, MACHINE_REFERENCE};
use omegaforge_core::explorer::{ExploreBudget, NodeRecord, NodeStatus, NodeStore};
use omegaforge_core::Bits;
use sha2::{Digest, Sha256};

pub const MAGIC: &str = "OMEGAFORGE/1";

#[derive(Debug, thiserror::Error)]
pub enum CheckpointError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("checksum mismatch: file says {stored}, records hash to {computed}")]
    Checksum { stored: String, computed: String },
    #[error("checkpoint was written by machine {found}, this build is {expected}")]
    MachineVersion { expected: String, found: String },
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{:02x}", b)).collect()
}

/// Hash of the normative machine description.
pub fn machine_version() -> String {
    hex(&Sha256::digest(MACHINE_REFERENCE.as_bytes()))
}

fn bits_field(b: &Bits) -> String {
    if b.is_empty() {
        "~".into()
    } else {
        b.to_string()
    }
}

fn parse_bits_field(s: &str) -> Option<Bits> {
    if s == "~" {
        Some(Bits::new())
    } else if s.bytes().all(|c| c == b'0' || c == b'1') {
        s.parse().ok()
    } else {
        None
    }
}

fn record_line(r: &NodeRecord) -> String {
    let out = match &r.output {
        None => "-".to_string(),
        Some(Output::Overflow) => "*".to_string(),
        Some(Output::Bits(b)) => bits_field(b),
    };
    format!("{} {} {} {}\n", bits_field(&r.program), r.status, out, r.steps)
}

/// A loaded checkpoint.
#[derive(Debug, Clone)]
pub struct Checkpoint {
    pub machine_version: String,
    pub store: NodeStore,
    pub checksum: String,
}

/// Serialise a store. Equal stores give equal bytes.
pub fn render(store: &NodeStore) -> (String, String) {
    let b = store.budget();
    let mut body = String::new();
    for r in store.records() {
        body.push_str(&record_line(r));
    }
    let checksum = hex(&Sha256::digest(body.as_bytes()));
    let text = format!(
        "{}\nmachine {}\nbudget max_len={} max_steps={}\n{}checksum sha256:{}\n",
        MAGIC,
        machine_version(),
        b.max_len,
        b.max_steps,
        body,
        checksum
    );
    (text, checksum)
}

/// Write through a temporary file and rename, so a crash never leaves a
/// half-written checkpoint in place. Returns the checksum.
pub fn write(path: &Path, store: &NodeStore) -> Result<String, CheckpointError> {
    let io_err = |source| CheckpointError::Io { path: path.to_path_buf(), source };
    let (text, checksum) = render(store);
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut f = fs::File::create(&tmp).map_err(io_err)?;
        f.write_all(text.as_bytes()).map_err(io_err)?;
        f.sync_all().map_err(io_err)?;
    }
    fs::rename(&tmp, path).map_err(io_err)?;
    Ok(checksum)
}

pub fn parse(text: &str) -> Result<Checkpoint, CheckpointError> {
    let fmt_err = |line: usize, msg: &str| CheckpointError::Format { line, msg: msg.to_string() };
    let lines: Vec<&str> = text.lines().collect();
    if lines.first() != Some(&MAGIC) {
        return Err(fmt_err(1, "missing OMEGAFORGE/1 header"));
    }
    let version = lines
        .get(1)
        .and_then(|l| l.strip_prefix("machine "))
        .ok_or_else(|| fmt_err(2, "missing machine line"))?
        .to_string();
    let budget = lines
        .get(2)
        .and_then(|l| parse_budget(l))
        .ok_or_else(|| fmt_err(3, "malformed budget line"))?;
    let last = lines.len().checked_sub(1).filter(|&i| i >= 3).ok_or_else(|| fmt_err(lines.len(), "missing checksum line"))?;
    let stored = lines[last]
        .strip_prefix("checksum sha256:")
        .ok_or_else(|| fmt_err(last + 1, "missing checksum line"))?
        .to_string();

    let mut hasher = Sha256::new();
    for l in &lines[3..last] {
        hasher.update(l.as_bytes());
        hasher.update(b"\n");
    }
    let computed = hex(&hasher.finalize());
    if computed != stored {
        return Err(CheckpointError::Checksum { stored, computed });
    }

    let mut records = Vec::with_capacity(last - 3);
    let mut prev: Option<Bits> = None;
    for (i, l) in lines[3..last].iter().enumerate() {
        let line = i + 4;
        let r = parse_record(l).ok_or_else(|| fmt_err(line, "malformed record"))?;
        if prev.as_ref().is_some_and(|p| *p >= r.program) {
            return Err(fmt_err(line, "records out of order"));
        }
        prev = Some(r.program.clone());
        records.push(r);
    }
    Ok(Checkpoint { machine_version: version, store: NodeStore::from_records(budget, records), checksum: stored })
}

fn parse_budget(line: &str) -> Option<ExploreBudget> {
    let mut it = line.strip_prefix("budget ")?.split(' ');
    let max_len = it.next()?.strip_prefix("max_len=")?.parse().ok()?;
    let max_steps = it.next()?.strip_prefix("max_steps=")?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    ExploreBudget::new(max_len, max_steps).ok()
}

fn parse_record(line: &str) -> Option<NodeRecord> {
    let mut it = line.split(' ');
    let program = parse_bits_field(it.next()?)?;
    let status = NodeStatus::parse(it.next()?)?;
    let output = match it.next()? {
        "-" => None,
        "*" => Some(Output::Overflow),
        s => Some(Output::Bits(parse_bits_field(s)?)),
    };
    let steps = it.next()?.parse().ok()?;
    if it.next().is_some() || output.is_some() != (status == NodeStatus::Halt) {
        return None;
    }
    Some(NodeRecord { program, status, output, steps })
}

/// Read and validate a checkpoint written by this machine version.
pub fn read(path: &Path) -> Result<Checkpoint, CheckpointError> {
    let text = fs::read_to_string(path).map_err(|source| CheckpointError::Io { path: path.to_path_buf(), source })?;
    let ck = parse(&text)?;
    let expected = machine_version();
    if ck.machine_version != expected {
        return Err(CheckpointError::MachineVersion { expected, found: ck.machine_version });
    }
    Ok(ck)
}

#[cfg(test)]
mod tests {
    use super::*;
    use omegaforge_core::explorer::explore;

    #[test]
    fn round_trip() {
        let store = explore(ExploreBudget::new(7, 1000).unwrap(), None).unwrap();
        let (text, sum) = render(&store);
        assert!(text.starts_with("OMEGAFORGE/1\nmachine "));
        assert!(text.contains("\n~ EXPANDED - "));
        assert!(text.contains("\n000 HALT ~ 1\n"));
        let ck = parse(&text).unwrap();
        assert_eq!(ck.store, store);
        assert_eq!(ck.checksum, sum);
    }

    #[test]
    fn corruption_detected() {
        let store = explore(ExploreBudget::new(5, 100).unwrap(), None).unwrap();
        let (text, _) = render(&store);
        let bad = text.replacen("000 HALT ~ 1", "000 HALT ~ 2", 1);
        assert!(matches!(parse(&bad), Err(CheckpointError::Checksum { .. })));
        assert!(matches!(parse("nope\n"), Err(CheckpointError::Format { line: 1, .. })));
    }
}
