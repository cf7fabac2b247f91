//! Embedded verification corpus: published tables kept as plain text files
//! under `corpus/`, one table per file. The file format is described in
//! `corpus/FORMAT.md`.
//!
//! Tables are merged by entry id, so one entry (say `ASD:S11`) collects its
//! polynomial from one file and its operator, shifts and basis from others.

use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Embedded table files, in load order.
pub const FILES: &[(&str, &str)] = &[
    ("asd_weights.txt", include_str!("../corpus/asd_weights.txt")),
    ("asd_shifts.txt", include_str!("../corpus/asd_shifts.txt")),
    ("asd_basis.txt", include_str!("../corpus/asd_basis.txt")),
    ("asd_operators.txt", include_str!("../corpus/asd_operators.txt")),
    ("asd_chi.txt", include_str!("../corpus/asd_chi.txt")),
    ("elliptic.txt", include_str!("../corpus/elliptic.txt")),
    ("yonemura.txt", include_str!("../corpus/yonemura.txt")),
    ("worked_example.txt", include_str!("../corpus/worked_example.txt")),
];

/// A correction of one transcribed cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub corrected: String,
    pub note: String,
}

/// One expected value as transcribed, with an optional correction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    pub verbatim: String,
    pub erratum: Option<Erratum>,
    /// `file:line` of the transcribed cell.
    pub origin: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub file: String,
    pub vars: Option<Vec<String>>,
    pub columns: Vec<String>,
    /// Cells keyed by column name, `id` included.
    pub rows: Vec<(usize, BTreeMap<String, String>)>,
    /// (id, column, erratum, line)
    pub errata: Vec<(String, String, Erratum, usize)>,
}

/// Everything the corpus states about one polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub vars: Option<Vec<String>>,
    /// Expected values by column name (`polynomial`, `weights`, `operator`, ...).
    pub fields: BTreeMap<String, Field>,
    pub tables: Vec<String>,
}

impl CorpusEntry {
    pub fn polynomial(&self) -> Option<&str> {
        self.fields.get("polynomial").map(|f| f.verbatim.as_str())
    }

    pub fn field(&self, name: &str) -> Option<&Field> {
        self.fields.get(name)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

fn corpus_err(file: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::Corpus(format!("{}:{}: {}", file, line, msg.into()))
}

fn split_cells(s: &str) -> Vec<String> {
    s.split('|').map(|c| c.trim().to_string()).collect()
}

/// Parses one table file.
pub fn parse_table(file: &str, text: &str) -> Result<Table> {
    let mut t = Table { name: String::new(), file: file.to_string(), vars: None, columns: Vec::new(), rows: Vec::new(), errata: Vec::new() };
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        if let Some(rest) = l.strip_prefix('@') {
            let (key, val) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let val = val.trim();
            match key {
                "table" => t.name = val.to_string(),
                "vars" => t.vars = Some(val.split(',').map(|v| v.trim().to_string()).collect()),
                "columns" => {
                    t.columns = split_cells(val);
                    if t.columns.first().map(String::as_str) != Some("id") {
                        return Err(corpus_err(file, line, "first column must be id"));
                    }
                }
                "erratum" => {
                    let cells = split_cells(val);
                    if cells.len() != 3 {
                        return Err(corpus_err(file, line, "erratum needs: <id> <column> | <corrected> | <note>"));
                    }
                    let mut head = cells[0].split_whitespace();
                    let (id, col) = match (head.next(), head.next(), head.next()) {
                        (Some(i), Some(c), None) => (i.to_string(), c.to_string()),
                        _ => return Err(corpus_err(file, line, "erratum target must be '<id> <column>'")),
                    };
                    if !t.columns.contains(&col) {
                        return Err(corpus_err(file, line, format!("erratum for unknown column {}", col)));
                    }
                    t.errata.push((id, col, Erratum { corrected: cells[1].clone(), note: cells[2].clone() }, line));
                }
                _ => return Err(corpus_err(file, line, format!("unknown directive @{}", key))),
            }
            continue;
        }
        if t.columns.is_empty() {
            return Err(corpus_err(file, line, "row before @columns"));
        }
        let cells = split_cells(l);
        if cells.len() != t.columns.len() {
            return Err(corpus_err(file, line, format!("expected {} cells, found {}", t.columns.len(), cells.len())));
        }
        t.rows.push((line, t.columns.iter().cloned().zip(cells).collect()));
    }
    if t.name.is_empty() {
        return Err(corpus_err(file, 0, "missing @table"));
    }
    for (id, _, _, line) in &t.errata {
        if !t.rows.iter().any(|(_, r)| &r["id"] == id) {
            return Err(corpus_err(file, *line, format!("erratum for unknown id {}", id)));
        }
    }
    Ok(t)
}

/// Merges tables by id, keeping first-appearance order.
pub fn merge(tables: &[Table]) -> Result<Corpus> {
    let mut entries: Vec<CorpusEntry> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for t in tables {
        for (line, row) in &t.rows {
            let id = row["id"].clone();
            let k = *index.entry(id.clone()).or_insert_with(|| {
                entries.push(CorpusEntry { id: id.clone(), vars: None, fields: BTreeMap::new(), tables: Vec::new() });
                entries.len() - 1
            });
            let e = &mut entries[k];
            if t.vars.is_some() {
                if e.vars.is_some() && e.vars != t.vars {
                    return Err(corpus_err(&t.file, *line, format!("{}: conflicting variable names", id)));
                }
                e.vars = t.vars.clone();
            }
            e.tables.push(t.name.clone());
            for (col, val) in row.iter().filter(|(c, _)| c.as_str() != "id") {
                let erratum = t.errata.iter().find(|(i, c, _, _)| i == &id && c == col).map(|x| x.2.clone());
                let field = Field { verbatim: val.clone(), erratum, origin: format!("{}:{}", t.file, line) };
                match e.fields.get(col) {
                    Some(prev) if prev.verbatim != field.verbatim => {
                        return Err(corpus_err(&t.file, *line, format!("{}: {} disagrees with {}", id, col, prev.origin)));
                    }
                    Some(_) => {}
                    None => {
                        e.fields.insert(col.clone(), field);
                    }
                }
            }
        }
    }
    Ok(Corpus { entries })
}

/// Loads the embedded corpus.
pub fn load() -> Result<Corpus> {
    let tables = FILES.iter().map(|(f, text)| parse_table(f, text)).collect::<Result<Vec<_>>>()?;
    merge(&tables)
}

/// Glob match supporting `*` anywhere, e.g. `ASD:*`, `YON:3*`, `*E12`.
pub fn glob_match(pattern: &str, s: &str) -> bool {
    let p: Vec<char> = pattern.chars().collect();
    let t: Vec<char> = s.chars().collect();
    let (mut pi, mut ti) = (0, 0);
    let mut star: Option<(usize, usize)> = None;
    while ti < t.len() {
        if pi < p.len() && (p[pi] == t[ti] || p[pi] == '?') {
            pi += 1;
            ti += 1;
        } else if pi < p.len() && p[pi] == '*' {
            star = Some((pi, ti));
            pi += 1;
        } else if let Some((sp, st)) = star {
            pi = sp + 1;
            ti = st + 1;
            star = Some((sp, st + 1));
        } else {
            return false;
        }
    }
    p[pi..].iter().all(|&c| c == '*')
}

impl Corpus {
    pub fn get(&self, id: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Entries whose id matches any of the comma-separated glob patterns.
    pub fn select(&self, patterns: &str) -> Vec<&CorpusEntry> {
        let ps: Vec<&str> = patterns.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        self.entries.iter().filter(|e| ps.is_empty() || ps.iter().any(|p| glob_match(p, &e.id))).collect()
    }
}
