//! Channel files in the `combichannel v1` text format:
//!
//! ```text
//! combichannel v1
//! <|X|> <|Y|> <|E|>
//! x y
//! ...
//! ```
//!
//! Edges are 0-based and written in ascending order. Label files hold one
//! label per line.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::channel::{Channel, Labels};
use crate::error::{Error, Result};

pub const HEADER: &str = "combichannel v1";

pub fn write_channel(a: &Channel, mut out: impl Write) -> Result<()> {
    writeln!(out, "{HEADER}")?;
    writeln!(out, "{} {} {}", a.num_inputs(), a.num_outputs(), a.num_edges())?;
    for (x, y) in a.edges() {
        writeln!(out, "{x} {y}")?;
    }
    Ok(())
}

fn parse_fields<const N: usize>(line: &str, lineno: usize) -> Result<[usize; N]> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != N {
        return Err(Error::Format(format!("line {lineno}: expected {N} integers, got {:?}", line.trim())));
    }
    let mut out = [0; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f.parse().map_err(|_| Error::Format(format!("line {lineno}: {f:?} is not a nonnegative integer")))?;
    }
    Ok(out)
}

pub fn read_channel(input: impl BufRead) -> Result<Channel> {
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, Ok(l))) if l.trim() == HEADER => {}
        Some((_, Ok(l))) => return Err(Error::Format(format!("bad header {:?}, expected {HEADER:?}", l.trim()))),
        Some((_, Err(e))) => return Err(e.into()),
        None => return Err(Error::Format("empty file".into())),
    }
    let (lineno, sizes) = lines.next().ok_or_else(|| Error::Format("missing size line".into()))?;
    let [nx, ny, ne] = parse_fields::<3>(&sizes?, lineno)?;
    let mut edges = Vec::with_capacity(ne);
    for (lineno, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let [x, y] = parse_fields::<2>(&line, lineno)?;
        edges.push((x, y));
    }
    if edges.len() != ne {
        return Err(Error::Format(format!("edge count mismatch: header says {ne}, found {}", edges.len())));
    }
    Channel::new(nx, ny, edges)
}

pub fn save_channel(a: &Channel, path: impl AsRef<Path>) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_channel(a, &mut f)?;
    f.flush()?;
    Ok(())
}

pub fn load_channel(path: impl AsRef<Path>) -> Result<Channel> {
    read_channel(BufReader::new(std::fs::File::open(path)?))
}

pub fn save_labels(labels: impl IntoIterator<Item = String>, path: impl AsRef<Path>) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    for l in labels {
        writeln!(f, "{l}")?;
    }
    f.flush()?;
    Ok(())
}

pub fn load_labels(path: impl AsRef<Path>, expected: usize) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path)?;
    let labels: Vec<String> = text.lines().map(str::to_owned).collect();
    if labels.len() != expected {
        return Err(Error::Format(format!("label file has {} lines, expected {expected}", labels.len())));
    }
    Ok(labels)
}

/// Loads a channel and attaches labels from the optional label files
/// (indices are used for a missing side).
pub fn load_labeled_channel(
    path: impl AsRef<Path>,
    input_labels: Option<&Path>,
    output_labels: Option<&Path>,
) -> Result<Channel> {
    let a = load_channel(path)?;
    if input_labels.is_none() && output_labels.is_none() {
        return Ok(a);
    }
    let inputs = match input_labels {
        Some(p) => load_labels(p, a.num_inputs())?,
        None => (0..a.num_inputs()).map(|x| x.to_string()).collect(),
    };
    let outputs = match output_labels {
        Some(p) => load_labels(p, a.num_outputs())?,
        None => (0..a.num_outputs()).map(|y| y.to_string()).collect(),
    };
    Ok(a.with_labels(Labels::Explicit { inputs, outputs }))
}
