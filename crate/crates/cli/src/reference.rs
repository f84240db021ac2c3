//! Bundled reference data (a transcribed line list for `c = 15` and a
//! transcribed triple-point incidence table) and the comparisons against
//! computed data.

use std::collections::BTreeSet;

use anyhow::{bail, Context, Result};
use arrangement_core::catalog::{arrangement_from_json, Arrangement};
use serde::Serialize;

pub const LINE_LIST: &str = include_str!("../data/line_list.json");
pub const TRIPLE_TABLE: &str = include_str!("../data/triple_table.csv");

pub fn reference_lines(text: Option<&str>) -> Result<Arrangement> {
    Ok(arrangement_from_json(text.unwrap_or(LINE_LIST), "reference line list")?)
}

/// A row of the incidence table with 1-based line numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub label: String,
    pub lines: BTreeSet<usize>,
}

/// Parses `row,line_a,line_b,line_c` records; `#` starts a comment line.
pub fn parse_triple_table(text: &str) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("row,") {
            continue;
        }
        let mut fields = line.split(',').map(str::trim);
        let label = fields.next().unwrap_or_default().to_string();
        let lines = fields
            .map(|f| f.parse::<usize>().with_context(|| format!("table line {}: bad line number {f:?}", n + 1)))
            .collect::<Result<BTreeSet<usize>>>()?;
        if lines.len() != 3 || lines.contains(&0) {
            bail!("table line {}: expected three distinct positive line numbers", n + 1);
        }
        rows.push(TableRow { label, lines });
    }
    Ok(rows)
}

/// For each reference line, the index of the equal line in `built`.
pub fn match_lines(reference: &Arrangement, built: &Arrangement) -> Vec<Option<usize>> {
    reference
        .lines()
        .iter()
        .map(|r| built.lines().iter().position(|b| b.line == r.line))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleComparison {
    pub table_rows: usize,
    pub computed: usize,
    /// Rows equal to a computed triple with line numbers taken literally.
    pub direct_matches: usize,
    /// A renumbering `table line i ↦ relabeling[i-1]` (1-based) that carries
    /// the table onto the computed triples, if one exists.
    pub relabeling: Option<Vec<usize>>,
    /// Rows matched after applying `relabeling`.
    pub matched_after_relabeling: usize,
}

impl TripleComparison {
    pub fn matches(&self) -> bool {
        self.table_rows == self.computed && self.matched_after_relabeling == self.computed
    }
}

/// Compares table rows with computed triples, both in 1-based line numbers
/// over `line_count` lines.
pub fn compare_triples(table: &[TableRow], computed: &[BTreeSet<usize>], line_count: usize) -> TripleComparison {
    let computed_set: BTreeSet<&BTreeSet<usize>> = computed.iter().collect();
    let direct_matches = table.iter().filter(|r| computed_set.contains(&r.lines)).count();
    let table_sets: Vec<Vec<usize>> = table.iter().map(|r| r.lines.iter().copied().collect()).collect();
    let distinct_rows: BTreeSet<&Vec<usize>> = table_sets.iter().collect();
    let relabeling = if distinct_rows.len() == computed.len() && table.len() == computed.len() {
        find_relabeling(&table_sets, &computed_set, line_count)
    } else {
        None
    };
    let matched_after_relabeling = match &relabeling {
        Some(map) => table_sets
            .iter()
            .filter(|row| {
                let image: BTreeSet<usize> = row.iter().map(|&l| map[l - 1]).collect();
                computed_set.contains(&image)
            })
            .count(),
        None => direct_matches,
    };
    TripleComparison {
        table_rows: table.len(),
        computed: computed.len(),
        direct_matches,
        relabeling,
        matched_after_relabeling,
    }
}

/// Backtracking search for a line bijection carrying every table row to a
/// computed triple. Tries the identity first on each line.
fn find_relabeling(
    table: &[Vec<usize>],
    computed: &BTreeSet<&BTreeSet<usize>>,
    line_count: usize,
) -> Option<Vec<usize>> {
    if table.iter().flatten().any(|&l| l == 0 || l > line_count) {
        return None;
    }
    // Rows become checkable once their largest line is assigned.
    let mut rows_by_last: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); line_count + 1];
    for row in table {
        rows_by_last[*row.iter().max().expect("three lines")].push(row);
    }

    fn extend(
        next: usize,
        line_count: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        rows_by_last: &[Vec<&Vec<usize>>],
        computed: &BTreeSet<&BTreeSet<usize>>,
    ) -> bool {
        if next > line_count {
            return true;
        }
        let candidates = std::iter::once(next).chain((1..=line_count).filter(|&c| c != next));
        for image in candidates {
            if used[image] {
                continue;
            }
            map[next] = image;
            used[image] = true;
            let consistent = rows_by_last[next].iter().all(|row| {
                let img: BTreeSet<usize> = row.iter().map(|&l| map[l]).collect();
                computed.contains(&img)
            });
            if consistent && extend(next + 1, line_count, map, used, rows_by_last, computed) {
                return true;
            }
            used[image] = false;
        }
        map[next] = 0;
        false
    }

    let mut map = vec![0; line_count + 1];
    let mut used = vec![false; line_count + 1];
    extend(1, line_count, &mut map, &mut used, &rows_by_last, computed).then(|| map[1..].to_vec())
}
