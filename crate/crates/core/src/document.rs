//! Serialized subgroup patterns: JSON and a plain-text layout that prints
//! the table as a triangle with rows labeled `G/H` and zeros as `.`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;
use crate::tom::{Stats, SubgroupPattern, TableOfMarks};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDescriptor {
    pub order: u64,
    /// Number of conjugates.
    pub length: u64,
    /// Order of the normalizer.
    pub normalizer: u64,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsDocument {
    pub probes: u64,
    pub max_probe: u64,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternDocument {
    pub group: String,
    pub degree: usize,
    pub classes: Vec<ClassDescriptor>,
    pub marks: Vec<Vec<u64>>,
    pub stats: StatsDocument,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

impl PatternDocument {
    pub fn from_pattern(name: &str, p: &SubgroupPattern) -> Self {
        let g = p.group.order();
        let classes = p
            .classes
            .iter()
            .zip(p.normalizer_orders())
            .map(|(h, n)| ClassDescriptor {
                order: h.order(),
                length: g / n,
                normalizer: n,
                generators: h.generators().iter().map(Permutation::to_string).collect(),
            })
            .collect();
        PatternDocument {
            group: name.to_string(),
            degree: p.group.degree(),
            classes,
            marks: p.table.rows().to_vec(),
            stats: StatsDocument {
                probes: p.stats.probes,
                max_probe: p.stats.max_probe,
                millis: p.stats.millis,
            },
        }
    }

    /// Rebuilds the pattern. The group is generated by the last class, and
    /// the stored orders and normalizer orders must agree with the table.
    pub fn to_pattern(&self) -> Result<SubgroupPattern> {
        if self.classes.is_empty() {
            return Err(Error::InvalidPattern("no classes".to_string()));
        }
        let mut classes = Vec::with_capacity(self.classes.len());
        for (i, c) in self.classes.iter().enumerate() {
            let gens = c
                .generators
                .iter()
                .map(|s| Permutation::parse(s, self.degree))
                .collect::<Result<Vec<_>>>()?;
            let h = Group::new(self.degree, gens)?;
            if h.order() != c.order {
                return Err(Error::InvalidPattern(format!(
                    "class {i}: generators give order {}, recorded {}",
                    h.order(),
                    c.order
                )));
            }
            classes.push(h);
        }
        let group = classes.last().unwrap().clone();
        for (i, h) in classes.iter().enumerate() {
            if !h.is_subgroup_of(&group) {
                return Err(Error::InvalidPattern(format!("class {i} is not inside the last class")));
            }
        }
        let table = TableOfMarks::from_rows(self.marks.clone())?;
        if table.len() != classes.len() {
            return Err(Error::InvalidPattern(format!(
                "{} classes but {} rows of marks",
                classes.len(),
                table.len()
            )));
        }
        let pattern = SubgroupPattern {
            group,
            classes,
            table,
            stats: Stats {
                probes: self.stats.probes,
                max_probe: self.stats.max_probe,
                millis: self.stats.millis,
            },
        };
        for (i, (c, n)) in self.classes.iter().zip(pattern.normalizer_orders()).enumerate() {
            if c.normalizer != n || c.length * n != pattern.group.order() {
                return Err(Error::InvalidPattern(format!(
                    "class {i}: recorded normalizer {} and length {} disagree with the table",
                    c.normalizer, c.length
                )));
            }
        }
        Ok(pattern)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| syntax(e.column(), format!("line {}: {e}", e.line())))
    }

    /// Row labels `G/<order>`, with a letter appended when several classes
    /// share an order.
    pub fn labels(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.classes.len());
        for (i, c) in self.classes.iter().enumerate() {
            let same: Vec<usize> = (0..self.classes.len())
                .filter(|&j| self.classes[j].order == c.order)
                .collect();
            let suffix = if same.len() == 1 {
                String::new()
            } else {
                letter_suffix(same.iter().position(|&j| j == i).unwrap())
            };
            out.push(format!("{}/{}{}", self.group, c.order, suffix));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let labels = self.labels();
        let lw = labels.iter().map(String::len).max().unwrap_or(0);
        let cw = self
            .marks
            .iter()
            .flatten()
            .map(|m| m.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        writeln!(out, "# group {}", self.group).unwrap();
        writeln!(out, "# degree {}", self.degree).unwrap();
        writeln!(
            out,
            "# stats probes {} max_probe {} millis {}",
            self.stats.probes, self.stats.max_probe, self.stats.millis
        )
        .unwrap();
        for (label, row) in labels.iter().zip(&self.marks) {
            let cells: Vec<String> = row
                .iter()
                .map(|&m| {
                    let s = if m == 0 { ".".to_string() } else { m.to_string() };
                    format!("{s:>cw$}")
                })
                .collect();
            writeln!(out, "{label:<lw$} {}", cells.join(" ")).unwrap();
        }
        for (label, c) in labels.iter().zip(&self.classes) {
            let mut line = format!(
                "# class {label} order {} length {} normalizer {} generators",
                c.order, c.length, c.normalizer
            );
            for g in &c.generators {
                line.push(' ');
                line.push_str(g);
            }
            writeln!(out, "{line}").unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut group = None;
        let mut degree = None;
        let mut stats = None;
        let mut rows: Vec<(String, Vec<u64>)> = Vec::new();
        let mut classes: Vec<(String, ClassDescriptor)> = Vec::new();
        let mut offset = 0;
        for line in text.lines() {
            let at = offset;
            offset += line.len() + 1;
            let words: Vec<&str> = line.split_whitespace().collect();
            if words.is_empty() {
                continue;
            }
            if words[0] != "#" {
                let marks = words[1..]
                    .iter()
                    .map(|w| {
                        if *w == "." {
                            Ok(0)
                        } else {
                            w.parse::<u64>().map_err(|_| syntax(at, format!("bad mark {w:?}")))
                        }
                    })
                    .collect::<Result<Vec<u64>>>()?;
                rows.push((words[0].to_string(), marks));
                continue;
            }
            let field =
                |i: usize| -> Result<&str> { words.get(i).copied().ok_or_else(|| syntax(at, "truncated header line")) };
            let number = |i: usize| -> Result<u64> {
                field(i)?
                    .parse::<u64>()
                    .map_err(|_| syntax(at, format!("expected a number at word {i}")))
            };
            match words.get(1).copied() {
                Some("group") => group = Some(words[2..].join(" ")),
                Some("degree") => degree = Some(number(2)? as usize),
                Some("stats") => {
                    if field(2)? != "probes" || field(4)? != "max_probe" || field(6)? != "millis" {
                        return Err(syntax(at, "malformed stats line"));
                    }
                    stats = Some(StatsDocument {
                        probes: number(3)?,
                        max_probe: number(5)?,
                        millis: number(7)?,
                    });
                }
                Some("class") => {
                    let expect = [(3, "order"), (5, "length"), (7, "normalizer"), (9, "generators")];
                    for (i, key) in expect {
                        if field(i)? != key {
                            return Err(syntax(at, format!("expected {key:?} in class line")));
                        }
                    }
                    classes.push((
                        field(2)?.to_string(),
                        ClassDescriptor {
                            order: number(4)?,
                            length: number(6)?,
                            normalizer: number(8)?,
                            generators: words[10..].iter().map(|s| s.to_string()).collect(),
                        },
                    ));
                }
                _ => {}
            }
        }
        let doc = PatternDocument {
            group: group.ok_or_else(|| syntax(0, "missing group line"))?,
            degree: degree.ok_or_else(|| syntax(0, "missing degree line"))?,
            classes: classes.iter().map(|(_, c)| c.clone()).collect(),
            marks: rows.iter().map(|(_, r)| r.clone()).collect(),
            stats: stats.ok_or_else(|| syntax(0, "missing stats line"))?,
        };
        let labels = doc.labels();
        if rows.len() != classes.len() {
            return Err(syntax(
                0,
                format!("{} rows but {} class lines", rows.len(), classes.len()),
            ));
        }
        for (i, label) in labels.iter().enumerate() {
            if &rows[i].0 != label || &classes[i].0 != label {
                return Err(syntax(
                    0,
                    format!("row {i} is labeled {:?}, expected {label:?}", rows[i].0),
                ));
            }
        }
        Ok(doc)
    }
}

fn letter_suffix(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).unwrap()
}
