//! CSV files for ratings and rankings.
//!
//! Ratings: one row per judge, `J` integer columns under the header
//! `obj_1,...,obj_J`. Rankings: one row per judge listing 1-based object
//! labels most preferred first, under the header `rank_1,...,rank_J`.
//! Headers are optional on input; a first row that is not all integers is
//! taken to be one.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{Dataset, Ranking, RatingsRow};

struct Row {
    line: u64,
    values: Vec<u64>,
}

fn parse_error(source: &str, line: u64, message: impl Into<String>) -> Error {
    Error::Parse { path: source.to_string(), line, message: message.into() }
}

fn read_integer_rows<R: Read>(reader: R, source: &str) -> Result<Vec<Row>> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut rows = Vec::new();
    let mut width = None;
    for (k, record) in csv.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(source, line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: std::result::Result<Vec<u64>, _> = record.iter().map(str::parse::<u64>).collect();
        let values = match parsed {
            Ok(v) => v,
            Err(_) if k == 0 => continue,
            Err(_) => {
                let bad = record.iter().find(|f| f.parse::<u64>().is_err()).unwrap_or("");
                return Err(parse_error(source, line, format!("'{bad}' is not a non-negative integer")));
            }
        };
        match width {
            None => width = Some(values.len()),
            Some(w) if w != values.len() => {
                return Err(parse_error(
                    source,
                    line,
                    format!("expected {w} columns, found {}", values.len()),
                ));
            }
            Some(_) => {}
        }
        rows.push(Row { line, values });
    }
    Ok(rows)
}

/// Parses a ratings table into rows with values in `0..=max_rating`.
pub fn parse_ratings<R: Read>(reader: R, source: &str, max_rating: u32) -> Result<Vec<RatingsRow>> {
    if max_rating == 0 {
        return Err(Error::invalid("the maximum rating M must be positive"));
    }
    read_integer_rows(reader, source)?
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            if let Some((j, &x)) = row.values.iter().enumerate().find(|(_, &x)| x > u64::from(max_rating)) {
                return Err(parse_error(
                    source,
                    row.line,
                    format!(
                        "rating out of range for judge {}, object {}: {x} (ratings must be in 0..={max_rating})",
                        i + 1,
                        j + 1
                    ),
                ));
            }
            let values = row.values.into_iter().map(|x| x as u32).collect();
            RatingsRow::new(values, max_rating).map_err(|e| parse_error(source, row.line, e.to_string()))
        })
        .collect()
}

/// Parses a rankings table of 1-based labels.
pub fn parse_rankings<R: Read>(reader: R, source: &str) -> Result<Vec<Ranking>> {
    read_integer_rows(reader, source)?
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            let n = row.values.len();
            let mut seen = vec![false; n];
            for &label in &row.values {
                if label == 0 || label as usize > n {
                    return Err(parse_error(
                        source,
                        row.line,
                        format!("judge {}: object label {label} is outside 1..={n}", i + 1),
                    ));
                }
                if std::mem::replace(&mut seen[label as usize - 1], true) {
                    return Err(parse_error(
                        source,
                        row.line,
                        format!("judge {}: object {label} appears more than once", i + 1),
                    ));
                }
            }
            let labels: Vec<usize> = row.values.iter().map(|&l| l as usize).collect();
            Ranking::from_labels(&labels).map_err(|e| parse_error(source, row.line, e.to_string()))
        })
        .collect()
}

/// Pairs parsed ratings and rankings into a dataset, reporting size mismatches.
pub fn assemble(ratings: Vec<RatingsRow>, rankings: Vec<Ranking>) -> Result<Dataset> {
    if rankings.is_empty() {
        return Err(Error::invalid("the rankings file contains no judges"));
    }
    if ratings.is_empty() {
        return Err(Error::invalid("the ratings file contains no judges"));
    }
    if ratings.len() != rankings.len() {
        return Err(Error::invalid(format!(
            "the ratings file has {} judges but the rankings file has {}",
            ratings.len(),
            rankings.len()
        )));
    }
    let (rated, ranked) = (ratings[0].len(), rankings[0].len());
    if rated != ranked {
        return Err(Error::invalid(format!(
            "the ratings file has {rated} objects but the rankings file has {ranked}"
        )));
    }
    Dataset::new(ratings, rankings)
}

pub fn load_dataset(ratings: &Path, rankings: &Path, max_rating: u32) -> Result<Dataset> {
    let open = |p: &Path| File::open(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())));
    let r = parse_ratings(open(ratings)?, &ratings.display().to_string(), max_rating)?;
    let k = parse_rankings(open(rankings)?, &rankings.display().to_string())?;
    assemble(r, k)
}

fn write_table<W: Write>(writer: W, prefix: &str, width: usize, rows: impl Iterator<Item = Vec<u64>>) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    let io = |e: csv::Error| Error::Io(e.to_string());
    csv.write_record((1..=width).map(|j| format!("{prefix}_{j}"))).map_err(io)?;
    for row in rows {
        csv.write_record(row.iter().map(u64::to_string)).map_err(io)?;
    }
    csv.flush()?;
    Ok(())
}

pub fn write_ratings<W: Write>(writer: W, data: &Dataset) -> Result<()> {
    write_table(
        writer,
        "obj",
        data.objects(),
        data.ratings().iter().map(|r| r.values().iter().map(|&x| u64::from(x)).collect()),
    )
}

pub fn write_rankings<W: Write>(writer: W, data: &Dataset) -> Result<()> {
    write_table(
        writer,
        "rank",
        data.objects(),
        data.rankings().iter().map(|r| r.labels().into_iter().map(|l| l as u64).collect()),
    )
}
