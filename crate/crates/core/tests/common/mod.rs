//! Readers for the hand-transcribed tables under `tests/fixtures`.

#![allow(dead_code)]

use marks::tom::TableOfMarks;

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn content_lines(text: &str) -> impl Iterator<Item = Vec<&str>> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|l| l.split_whitespace().collect())
}

fn mark(w: &str) -> u64 {
    if w == "." {
        0
    } else {
        w.parse().unwrap_or_else(|_| panic!("bad mark {w:?}"))
    }
}

/// A lower-triangular table with a label per row and, optionally, a color
/// letter (`b` or `r`) after the label.
pub struct Triangle {
    pub labels: Vec<String>,
    pub red: Vec<bool>,
    pub table: TableOfMarks,
}

pub fn triangle(text: &str) -> Triangle {
    let mut labels = Vec::new();
    let mut red = Vec::new();
    let mut rows = Vec::new();
    for words in content_lines(text) {
        let mut rest = &words[1..];
        let color = rest.first().copied();
        if matches!(color, Some("b") | Some("r")) {
            red.push(color == Some("r"));
            rest = &rest[1..];
        } else {
            red.push(false);
        }
        labels.push(words[0].to_string());
        rows.push(rest.iter().map(|w| mark(w)).collect());
    }
    Triangle {
        labels,
        red,
        table: TableOfMarks::from_rows(rows).expect("fixture rows are triangular"),
    }
}

/// Rows `label c_1 .. c_n modulus`.
pub fn dress_rows(text: &str) -> Vec<(String, Vec<u64>, u64)> {
    content_lines(text)
        .map(|w| {
            let nums: Vec<u64> = w[1..].iter().map(|x| mark(x)).collect();
            let (coeffs, modulus) = nums.split_at(nums.len() - 1);
            (w[0].to_string(), coeffs.to_vec(), modulus[0])
        })
        .collect()
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Panel {
    pub orders: Vec<u64>,
    /// `(red, order below, order above)`, sorted.
    pub edges: Vec<(bool, u64, u64)>,
}

pub fn panels(text: &str) -> Vec<Panel> {
    let mut out: Vec<Panel> = Vec::new();
    for w in content_lines(text) {
        let nums: Vec<u64> = w[1..].iter().map(|x| x.parse().unwrap()).collect();
        match w[0] {
            "panel" => out.push(Panel {
                orders: nums,
                edges: Vec::new(),
            }),
            kind => out.last_mut().unwrap().edges.push((kind == "red", nums[0], nums[1])),
        }
    }
    for p in &mut out {
        p.orders.sort_unstable();
        p.edges.sort_unstable();
    }
    out
}
