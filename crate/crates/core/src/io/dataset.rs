//! Dataset CSV: header `subject,seq,task,response`, one row per trial.

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::domain::{parse_response, parse_task, ReasonerProfile, Record};
use crate::error::{Error, Result};

pub const DATASET_HEADER: [&str; 4] = ["subject", "seq", "task", "response"];

/// Reads and validates a dataset file.
///
/// Profiles come out in order of first appearance, records sorted by `seq`.
/// Errors cite the 1-based line of the offending row.
pub fn load_dataset(path: impl AsRef<Path>) -> Result<Vec<ReasonerProfile>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_dataset(file, path)
}

pub fn parse_dataset<R: Read>(reader: R, label: &Path) -> Result<Vec<ReasonerProfile>> {
    let row_err = |row: usize, reason: String| Error::Row {
        path: label.to_path_buf(),
        row,
        reason,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let headers = rdr.headers().map_err(|e| Error::Format {
        path: label.to_path_buf(),
        message: e.to_string(),
    })?;
    if headers.iter().collect::<Vec<_>>() != DATASET_HEADER {
        return Err(row_err(
            1,
            format!("expected header {}", DATASET_HEADER.join(",")),
        ));
    }

    let mut order: Vec<String> = Vec::new();
    let mut rows: HashMap<String, Vec<(usize, Record)>> = HashMap::new();
    for result in rdr.records() {
        let record = result.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            row_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let subject = &record[0];
        if subject.is_empty() {
            return Err(row_err(line, "empty subject id".into()));
        }
        let seq: u32 = record[1]
            .parse()
            .map_err(|_| row_err(line, format!("invalid seq \"{}\"", &record[1])))?;
        let task = parse_task(&record[2]).map_err(|e| row_err(line, e.to_string()))?;
        let response = parse_response(&record[3]).map_err(|e| row_err(line, e.to_string()))?;
        if !rows.contains_key(subject) {
            order.push(subject.to_string());
        }
        rows.entry(subject.to_string())
            .or_default()
            .push((line, Record::new(seq, task, response)));
    }

    order
        .into_iter()
        .map(|subject| {
            let mut recs = rows.remove(&subject).unwrap_or_default();
            recs.sort_by_key(|(_, r)| r.seq);
            let mut tasks = HashSet::new();
            for (i, (line, r)) in recs.iter().enumerate() {
                if i > 0 && recs[i - 1].1.seq == r.seq {
                    return Err(row_err(
                        *line,
                        format!("duplicate seq {} for subject '{subject}'", r.seq),
                    ));
                }
                if !tasks.insert(r.task) {
                    return Err(row_err(
                        *line,
                        format!("duplicate task {} for subject '{subject}'", r.task),
                    ));
                }
            }
            ReasonerProfile::new(subject, recs.into_iter().map(|(_, r)| r).collect())
        })
        .collect()
}

pub fn write_dataset<W: Write>(profiles: &[ReasonerProfile], writer: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(DATASET_HEADER)?;
    for p in profiles {
        for r in p.records() {
            w.write_record([
                p.subject(),
                &r.seq.to_string(),
                &r.task.code(),
                r.response.code(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn save_dataset(profiles: &[ReasonerProfile], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = create(path)?;
    write_dataset(profiles, file).map_err(|e| csv_error(path, e))
}

pub(crate) fn create(path: &Path) -> Result<File> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn csv_error(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::Io {
            path: PathBuf::from(path),
            source,
        },
        other => Error::Format {
            path: PathBuf::from(path),
            message: format!("{other:?}"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Vec<ReasonerProfile>> {
        parse_dataset(text.as_bytes(), Path::new("mem.csv"))
    }

    #[test]
    fn groups_and_sorts() {
        let data = parse(
            "subject,seq,task,response\n\
             b,2,AA2,NVC\n\
             a,1,AA1,Aac\n\
             b,1,AA1,Iac\n",
        )
        .unwrap();
        assert_eq!(data.len(), 2);
        assert_eq!(data[0].subject(), "b");
        assert_eq!(data[0].records()[0].seq, 1);
        assert_eq!(data[0].records()[0].response.code(), "Iac");
        assert_eq!(data[1].subject(), "a");
    }

    #[test]
    fn header_only_is_empty() {
        assert!(parse("subject,seq,task,response\n").unwrap().is_empty());
    }

    #[test]
    fn bad_response_cites_row() {
        let err = parse("subject,seq,task,response\na,1,AA1,Aac\na,2,AA2,XYZ\n").unwrap_err();
        match err {
            Error::Row { row, reason, .. } => {
                assert_eq!(row, 3);
                assert!(reason.contains("XYZ"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_task_cites_row() {
        let err = parse("subject,seq,task,response\na,1,AA1,Aac\na,2,AA1,NVC\n").unwrap_err();
        assert!(matches!(err, Error::Row { row: 3, .. }), "{err}");
    }

    #[test]
    fn duplicate_seq_rejected() {
        let err = parse("subject,seq,task,response\na,1,AA1,Aac\na,1,AA2,NVC\n").unwrap_err();
        assert!(matches!(err, Error::Row { .. }), "{err}");
    }

    #[test]
    fn malformed_rows_rejected() {
        assert!(parse("subject,seq,task,response\na,x,AA1,Aac\n").is_err());
        assert!(parse("subject,seq,task,response\na,1,AA1\n").is_err());
        assert!(parse("subject,seq,task,response\na,1,ZA1,Aac\n").is_err());
        assert!(parse("subj,seq,task,response\na,1,AA1,Aac\n").is_err());
        assert!(parse("subject,seq,task,response\n,1,AA1,Aac\n").is_err());
    }

    #[test]
    fn write_then_parse_is_identity() {
        let pop = crate::synthetic::generate_population();
        let mut buf = Vec::new();
        write_dataset(&pop[..5], &mut buf).unwrap();
        let back = parse(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back, pop[..5].to_vec());
    }
}
