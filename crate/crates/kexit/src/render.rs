//! Text, Markdown, CSV and JSON renderings of a [`KExitTable`].
//!
//! Columns follow the usual layout: `p`, `theta(p)`, `theta_bar(p)`,
//! `H(p,G)`, `d_G(p)`, `|H(p,G)|`, result. Sets are ascending and
//! comma-separated without spaces. JSON carries every field of every row,
//! including `L(p,G)` and both exit flags.

use std::fmt;
use std::str::FromStr;

use crate::method::{KExitRow, KExitTable};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Format {
    #[default]
    Text,
    Markdown,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "md" | "markdown" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!(
                "unknown format {s:?} (expected text, md, csv or json)"
            )),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Markdown => "md",
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

const EMPTY_SET: &str = "∅";

fn join(set: &[u64]) -> String {
    set.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn set_cell(set: &[u64]) -> String {
    if set.is_empty() {
        EMPTY_SET.to_string()
    } else {
        join(set)
    }
}

fn exclusion(p: u64) -> String {
    format!("{p} ∉ π(K)")
}

fn cells(row: &KExitRow, excluded: bool) -> [String; 7] {
    [
        row.prime.to_string(),
        set_cell(&row.theta),
        set_cell(&row.theta_bar),
        set_cell(&row.page),
        row.degree.to_string(),
        row.page.len().to_string(),
        if excluded {
            exclusion(row.prime)
        } else {
            "-".to_string()
        },
    ]
}

/// `|G|` rebuilt from the rows.
fn order_text(table: &KExitTable) -> String {
    table
        .rows
        .iter()
        .map(|r| match r.m {
            1 => r.prime.to_string(),
            m => format!("{}^{m}", r.prime),
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn verdict_line(table: &KExitTable) -> String {
    if table.excluded.is_empty() {
        "excluded: none".to_string()
    } else {
        let items: Vec<String> = table.excluded.iter().map(|&p| exclusion(p)).collect();
        format!("excluded: {}", items.join(", "))
    }
}

pub fn render(table: &KExitTable, format: Format) -> String {
    match format {
        Format::Text => render_text(table),
        Format::Markdown => render_markdown(table),
        Format::Csv => render_csv(table),
        Format::Json => render_json(table),
    }
}

fn render_text(table: &KExitTable) -> String {
    let header = [
        "p",
        "theta(p)",
        "theta_bar(p)",
        "H(p,G)",
        "d_G(p)",
        "|H(p,G)|",
        "result",
    ];
    let body: Vec<[String; 7]> = table
        .rows
        .iter()
        .map(|r| cells(r, table.excluded.contains(&r.prime)))
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string()
    };

    let mut out = format!("K-Exit table for |G| = {}\n\n", order_text(table));
    out += &line(&header.map(String::from));
    out.push('\n');
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out += &rule.join("  ");
    out.push('\n');
    for row in &body {
        out += &line(row);
        out.push('\n');
    }
    out.push('\n');
    out += &verdict_line(table);
    out.push('\n');
    out
}

fn render_markdown(table: &KExitTable) -> String {
    let mut out = format!("K-Exit table for |G| = {}\n\n", order_text(table));
    out += "| p | θ(p) | θ̄(p) | H(p,G) | d_G(p) | \\|H(p,G)\\| | result |\n";
    out += "|---|---|---|---|---|---|---|\n";
    for r in &table.rows {
        let c = cells(r, table.excluded.contains(&r.prime));
        out += &format!("| {} |\n", c.join(" | "));
    }
    out.push('\n');
    out += &verdict_line(table);
    out.push('\n');
    out
}

fn render_csv(table: &KExitTable) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut write = |record: &[String]| {
        writer
            .write_record(record)
            .expect("writing to memory cannot fail");
    };
    write(&["p", "theta", "theta_bar", "H", "degree", "H_size", "result"].map(String::from));
    for r in &table.rows {
        let excluded = table.excluded.contains(&r.prime);
        write(&[
            r.prime.to_string(),
            join(&r.theta),
            join(&r.theta_bar),
            join(&r.page),
            r.degree.to_string(),
            r.page.len().to_string(),
            if excluded { "excluded" } else { "-" }.to_string(),
        ]);
    }
    let bytes = writer.into_inner().expect("in-memory writer");
    String::from_utf8(bytes).expect("csv output is UTF-8")
}

fn render_json(table: &KExitTable) -> String {
    let mut out = serde_json::to_string(table).expect("table serializes");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::method::{build_table, Method};
    use crate::model::{parse_degrees, parse_order, validate};

    fn table(order: &str, degrees: &str) -> KExitTable {
        let ctx = validate(parse_order(order).unwrap(), parse_degrees(degrees).unwrap()).unwrap();
        build_table(&ctx, Method::Both)
    }

    #[test]
    fn csv_row_for_seven() {
        let csv = render(&table("2^11*3*5*7^2*19*31^3", "3,2,2,1,1,1"), Format::Csv);
        assert!(csv
            .lines()
            .any(|l| l == r#"7,"5,19,31","5,19,31","5,19,31",1,3,excluded"#));
        assert!(
            csv.lines().any(|l| l == r#"2,19,"3,5,7,19,31",,3,0,-"#),
            "{csv}"
        );
    }

    #[test]
    fn json_single_prime() {
        let json = render(&table("7", "0"), Format::Json);
        assert_eq!(
            json.trim_end(),
            r#"{"rows":[{"prime":7,"m":1,"theta":[],"theta_bar":[],"page":[],"l_set":[],"degree":0,"exits_by_H":false,"exits_by_L":false}],"excluded":[]}"#
        );
    }

    #[test]
    fn json_round_trip() {
        let t = table("2^9*3^7*5^3*7*11^2*17*89^6*233*373", "6,6,6,3,6,3,4,3,3");
        let back: KExitTable = serde_json::from_str(&render(&t, Format::Json)).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn text_layout() {
        let text = render(
            &table("2^9*3^7*5^3*7*11^2*17*89^6*233*373", "6,6,6,3,6,3,4,3,3"),
            Format::Text,
        );
        assert!(text.starts_with("K-Exit table for |G| = 2^9*3^7*5^3*7*11^2*17*89^6*233*373\n"));
        let row17 = text.lines().find(|l| l.starts_with("17 ")).unwrap();
        assert!(row17.contains("3,5,7,11,89,233,373"));
        assert!(row17.ends_with("17 ∉ π(K)"));
        let row89 = text.lines().find(|l| l.starts_with("89 ")).unwrap();
        assert!(row89.contains("∅"));
        assert!(text.ends_with("excluded: 7 ∉ π(K), 17 ∉ π(K), 233 ∉ π(K), 373 ∉ π(K)\n"));
    }

    #[test]
    fn markdown_layout() {
        let md = render(&table("7", "0"), Format::Markdown);
        assert!(md.contains("| 7 | ∅ | ∅ | ∅ | 0 | 0 | - |"));
        assert!(md.ends_with("excluded: none\n"));
    }

    #[test]
    fn format_parsing() {
        assert_eq!("md".parse::<Format>(), Ok(Format::Markdown));
        assert!("xml".parse::<Format>().is_err());
    }
}
