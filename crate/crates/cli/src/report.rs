//! Report rendering: an aligned comparison grid for humans and a stable
//! tab-separated format for diffing.

use anyhow::{bail, Result};
use rsar_core::Algorithm;

use crate::config::ReportFormat;
use crate::experiment::{ReportRow, VerificationReport};

/// Renders the rows in the requested format. The machine format contains
/// no wall-clock fields, so rerunning an identical config reproduces it
/// byte for byte.
pub fn emit_report(rows: &[ReportRow], format: ReportFormat) -> Result<String> {
    if rows.is_empty() {
        bail!("nothing to report: no rows were produced");
    }
    Ok(match format {
        ReportFormat::Machine => machine(rows),
        ReportFormat::Table => table(rows),
    })
}

fn sanitize(field: &str) -> String {
    field.replace(['\t', '\n', '\r'], " ")
}

fn machine(rows: &[ReportRow]) -> String {
    let mut out = String::from(
        "dataset\talgorithm\tattrs\tobjects\truns\tbase_seed\tcardinalities\tsize\tsubset\tgamma_best\tfeasible\tevaluations\terror\n",
    );
    for row in rows {
        let cards: Vec<String> = row.cardinalities.iter().map(usize::to_string).collect();
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.6}\t{}\t{}\t{}\n",
            sanitize(&row.dataset),
            row.algorithm.id(),
            row.num_attrs,
            row.num_objects,
            row.runs,
            row.base_seed,
            cards.join(","),
            row.cardinality_display(),
            row.best_subset,
            row.gamma_best,
            row.feasible,
            row.total_evaluations,
            sanitize(row.error.as_deref().unwrap_or("")),
        ));
    }
    out
}

fn dedup_preserving<T: Clone + PartialEq>(items: impl Iterator<Item = T>) -> Vec<T> {
    let mut seen = Vec::new();
    for item in items {
        if !seen.contains(&item) {
            seen.push(item);
        }
    }
    seen
}

fn aligned(grid: &[Vec<String>]) -> String {
    let columns = grid.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| grid.iter().map(|r| r.get(c).map_or(0, String::len)).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in grid {
        let mut line = String::from(" ");
        for (c, cell) in row.iter().enumerate() {
            line.push(' ');
            line.push_str(cell);
            if c + 1 < row.len() {
                line.push_str(&" ".repeat(widths[c] - cell.len() + 1));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn table(rows: &[ReportRow]) -> String {
    let datasets = dedup_preserving(rows.iter().map(|r| r.dataset.clone()));
    let algorithms: Vec<Algorithm> = dedup_preserving(rows.iter().map(|r| r.algorithm));
    let cell = |d: &str, a: Algorithm| rows.iter().find(|r| r.dataset == d && r.algorithm == a);

    let mut grid: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["algorithm".to_string()];
    header.extend(datasets.iter().map(|d| sanitize(d)));
    grid.push(header);

    let mut features = vec!["(features)".to_string()];
    let mut objects = vec!["(objects)".to_string()];
    for d in &datasets {
        let any = rows.iter().find(|r| &r.dataset == d && r.error.is_none());
        features.push(any.map_or("-".into(), |r| r.num_attrs.to_string()));
        objects.push(any.map_or("-".into(), |r| r.num_objects.to_string()));
    }
    grid.push(features);
    grid.push(objects);

    for &a in &algorithms {
        let mut line = vec![a.id().to_string()];
        for d in &datasets {
            line.push(match cell(d, a) {
                Some(row) if row.error.is_some() => "error".into(),
                Some(row) => row.cardinality_display(),
                None => "-".into(),
            });
        }
        grid.push(line);
    }

    let mut out = String::from("reduct sizes\n\n");
    out.push_str(&aligned(&grid));

    let mut details: Vec<Vec<String>> = vec![vec![
        "dataset".into(),
        "algorithm".into(),
        "size".into(),
        "gamma".into(),
        "feasible".into(),
        "runs".into(),
        "evaluations".into(),
        "time_ms".into(),
    ]];
    for row in rows.iter().filter(|r| r.error.is_none()) {
        details.push(vec![
            sanitize(&row.dataset),
            row.algorithm.id().into(),
            row.cardinality_display(),
            format!("{:.6}", row.gamma_best),
            if row.feasible { "yes".into() } else { "NO".into() },
            row.runs.to_string(),
            row.total_evaluations.to_string(),
            format!("{:.1}", row.total_elapsed.as_secs_f64() * 1e3),
        ]);
    }
    if details.len() > 1 {
        out.push_str("\ndetails\n\n");
        out.push_str(&aligned(&details));
    }

    let failures: Vec<&ReportRow> = rows.iter().filter(|r| r.error.is_some()).collect();
    if !failures.is_empty() {
        out.push_str("\nerrors\n\n");
        for row in failures {
            out.push_str(&format!(
                "  {}/{}: {}\n",
                sanitize(&row.dataset),
                row.algorithm.id(),
                sanitize(row.error.as_deref().unwrap_or(""))
            ));
        }
    }
    out
}

/// Renders the oracle comparison: per dataset, the true minimal size and
/// every algorithm's per-run gap, flagging runs that failed to return a
/// genuine reduct.
pub fn render_verification(report: &VerificationReport) -> String {
    let mut out = String::from("oracle verification\n");
    for entry in &report.entries {
        out.push('\n');
        match (&entry.notice, entry.oracle_cardinality) {
            (Some(notice), _) => {
                out.push_str(&format!("dataset {}: {}\n", sanitize(&entry.dataset), notice));
            }
            (None, Some(minimum)) => {
                out.push_str(&format!(
                    "dataset {}: minimal reduct cardinality {}\n",
                    sanitize(&entry.dataset),
                    minimum
                ));
                let mut grid: Vec<Vec<String>> = vec![vec![
                    "algorithm".into(),
                    "sizes".into(),
                    "gaps".into(),
                    "validity".into(),
                ]];
                for row in &entry.rows {
                    let sizes: Vec<String> =
                        row.cardinalities.iter().map(usize::to_string).collect();
                    let gaps: Vec<String> = row.gaps.iter().map(usize::to_string).collect();
                    grid.push(vec![
                        row.algorithm.id().into(),
                        sizes.join(","),
                        gaps.join(","),
                        if row.invalid_runs == 0 {
                            "all runs valid".into()
                        } else {
                            format!("{} runs returned non-reducts", row.invalid_runs)
                        },
                    ]);
                }
                out.push_str(&aligned(&grid));
            }
            (None, None) => out.push_str(&format!(
                "dataset {}: no verification data\n",
                sanitize(&entry.dataset)
            )),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rsar_core::AttributeSubset;
    use std::time::Duration;

    fn row(dataset: &str, algorithm: Algorithm, cards: Vec<usize>) -> ReportRow {
        ReportRow {
            dataset: dataset.into(),
            algorithm,
            num_attrs: 9,
            num_objects: 100,
            runs: cards.len(),
            base_seed: 1,
            cardinalities: cards,
            best_subset: AttributeSubset::from_indices([0, 2]),
            gamma_best: 1.0,
            feasible: true,
            total_evaluations: 42,
            total_elapsed: Duration::from_millis(5),
            error: None,
        }
    }

    #[test]
    fn empty_rows_are_an_error() {
        assert!(emit_report(&[], ReportFormat::Table).is_err());
        assert!(emit_report(&[], ReportFormat::Machine).is_err());
    }

    #[test]
    fn machine_format_has_constant_field_count() {
        let rows = vec![
            row("a", Algorithm::QuickReduct, vec![5]),
            row("b", Algorithm::BeeRsar, vec![4, 5, 4]),
        ];
        let text = emit_report(&rows, ReportFormat::Machine).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        let counts: Vec<usize> = lines.iter().map(|l| l.split('\t').count()).collect();
        assert!(counts.iter().all(|&c| c == counts[0]));
        assert!(lines[2].contains("4-5"));
        assert!(lines[1].contains("{0,2}"));
    }

    #[test]
    fn machine_format_excludes_wall_time() {
        let mut a = row("a", Algorithm::QuickReduct, vec![5]);
        let text1 = emit_report(std::slice::from_ref(&a), ReportFormat::Machine).unwrap();
        a.total_elapsed = Duration::from_secs(30);
        let text2 = emit_report(&[a], ReportFormat::Machine).unwrap();
        assert_eq!(text1, text2);
    }

    #[test]
    fn table_format_pivots_datasets_into_columns() {
        let rows = vec![
            row("wisconsin", Algorithm::QuickReduct, vec![5]),
            row("cleveland", Algorithm::QuickReduct, vec![7]),
            row("wisconsin", Algorithm::BeeRsar, vec![4, 4, 4]),
            row("cleveland", Algorithm::BeeRsar, vec![6, 7, 6]),
        ];
        let text = emit_report(&rows, ReportFormat::Table).unwrap();
        let header = text
            .lines()
            .find(|l| l.contains("algorithm"))
            .unwrap();
        assert!(header.contains("wisconsin"));
        assert!(header.contains("cleveland"));
        let bee = text.lines().find(|l| l.contains("beersar")).unwrap();
        assert!(bee.contains('4'));
        assert!(bee.contains("6-7"));
    }

    #[test]
    fn errors_get_their_own_section() {
        let mut bad = row("a", Algorithm::Ebr, vec![]);
        bad.error = Some("file not found".into());
        let text = emit_report(&[bad], ReportFormat::Table).unwrap();
        assert!(text.contains("errors"));
        assert!(text.contains("file not found"));
    }
}
