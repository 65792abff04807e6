//! Metrics CSV persistence. One row per run, decimal integers, UTF-8, LF.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use super::{MetricsMatrix, MetricsRecord, Technique};

/// Fixed header line of a metrics CSV file.
pub const METRICS_CSV_HEADER: &str = "technique,n,seed,time_ns,mem_consumed_bits,total_mem_kb";

#[derive(Debug, Error)]
pub enum CsvError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

impl CsvError {
    fn format(line: usize, message: impl Into<String>) -> Self {
        CsvError::Format {
            line,
            message: message.into(),
        }
    }
}

/// Writes `matrix` to `path`; an empty matrix produces a header-only file.
pub fn write_metrics_csv(matrix: &MetricsMatrix, path: &Path) -> Result<(), CsvError> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{METRICS_CSV_HEADER}")?;
    for r in matrix.rows() {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.technique, r.n, r.seed, r.time_ns, r.mem_consumed_bits, r.total_mem_kb
        )?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a metrics CSV written by [`write_metrics_csv`]. Round-trips
/// field-exactly. Malformed content reports the 1-based offending line.
pub fn read_metrics_csv(path: &Path) -> Result<MetricsMatrix, CsvError> {
    let reader = BufReader::new(File::open(path)?);
    let mut matrix = MetricsMatrix::new();
    let mut lines = reader.lines().enumerate();

    let (_, header) = lines
        .next()
        .ok_or_else(|| CsvError::format(1, "missing header"))?;
    let header = header?;
    if header != METRICS_CSV_HEADER {
        return Err(CsvError::format(
            1,
            format!("bad header: expected `{METRICS_CSV_HEADER}`, found `{header}`"),
        ));
    }

    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line?;
        if line.is_empty() {
            return Err(CsvError::format(line_no, "empty row"));
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(CsvError::format(
                line_no,
                format!("expected 6 fields, found {}", fields.len()),
            ));
        }
        let technique = Technique::parse(fields[0])
            .ok_or_else(|| CsvError::format(line_no, format!("unknown technique `{}`", fields[0])))?;
        let parse_u64 = |name: &str, raw: &str| {
            raw.parse::<u64>()
                .map_err(|e| CsvError::format(line_no, format!("bad {name} `{raw}`: {e}")))
        };
        let record = MetricsRecord {
            technique,
            n: parse_u64("n", fields[1])?,
            seed: parse_u64("seed", fields[2])?,
            time_ns: parse_u64("time_ns", fields[3])?,
            mem_consumed_bits: parse_u64("mem_consumed_bits", fields[4])?,
            total_mem_kb: parse_u64("total_mem_kb", fields[5])?,
        };
        if let Some(t) = matrix.technique() {
            if t != record.technique {
                return Err(CsvError::format(
                    line_no,
                    format!("mixed techniques: file holds {t}, row holds {}", record.technique),
                ));
            }
        }
        matrix.push(record);
    }
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample_record(technique: Technique, n: u64) -> MetricsRecord {
        MetricsRecord {
            technique,
            n,
            seed: 42 ^ n,
            time_ns: 1000 + n,
            mem_consumed_bits: 64 * n,
            total_mem_kb: n.div_ceil(128).max(1),
        }
    }

    #[test]
    fn empty_matrix_round_trips_via_header_only_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.csv");
        let m = MetricsMatrix::new();
        write_metrics_csv(&m, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, format!("{METRICS_CSV_HEADER}\n"));
        assert_eq!(read_metrics_csv(&path).unwrap(), m);
    }

    #[test]
    fn single_row_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.csv");
        let m: MetricsMatrix = [sample_record(Technique::Treap, 10)].into_iter().collect();
        write_metrics_csv(&m, &path).unwrap();
        assert_eq!(read_metrics_csv(&path).unwrap(), m);
    }

    #[test]
    fn non_numeric_field_names_line_two() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.csv");
        std::fs::write(
            &path,
            format!("{METRICS_CSV_HEADER}\nshell,10,1,abc,80,1\n"),
        )
        .unwrap();
        match read_metrics_csv(&path) {
            Err(CsvError::Format { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("time_ns"), "message: {message}");
            }
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn bad_header_names_line_one() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.csv");
        std::fs::write(&path, "a,b\n").unwrap();
        match read_metrics_csv(&path) {
            Err(CsvError::Format { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn mixed_techniques_rejected_with_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.csv");
        std::fs::write(
            &path,
            format!("{METRICS_CSV_HEADER}\nshell,1,1,1,8,1\nheap,1,1,1,8,1\n"),
        )
        .unwrap();
        match read_metrics_csv(&path) {
            Err(CsvError::Format { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("mixed"), "message: {message}");
            }
            other => panic!("expected format error, got {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn round_trip_is_field_exact(
            rows in proptest::collection::vec(
                (any::<u64>(), any::<u64>(), any::<u64>(), any::<u64>(), any::<u64>()),
                0..40,
            )
        ) {
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("m.csv");
            let m: MetricsMatrix = rows
                .into_iter()
                .map(|(n, seed, time_ns, bits, kb)| MetricsRecord {
                    technique: Technique::Heap,
                    n,
                    seed,
                    time_ns,
                    mem_consumed_bits: bits,
                    total_mem_kb: kb,
                })
                .collect();
            write_metrics_csv(&m, &path).unwrap();
            prop_assert_eq!(read_metrics_csv(&path).unwrap(), m);
        }
    }
}
