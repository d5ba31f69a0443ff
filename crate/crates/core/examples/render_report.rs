//! Writes the JSON and markdown reports for Greece to a directory.
//!
//! `cargo run --example render_report -- [DIR]`  (default: ./reports)

use ahp_readiness::datasets::{greece_assessment, greece_hierarchy};
use ahp_readiness::report::{report_file_name, Format, Report};
use ahp_readiness::scoring::assess;

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "reports".into());
    std::fs::create_dir_all(&dir)?;
    let result = assess(&greece_hierarchy(), &greece_assessment()).expect("bundled data is valid");
    let report = Report::new(&result, chrono::Utc::now());
    for format in [Format::Json, Format::Markdown] {
        let path = std::path::Path::new(&dir).join(report_file_name(&result.subject, format));
        std::fs::write(&path, report.render(format))?;
        println!("wrote {}", path.display());
    }
    for p in &report.breakdown {
        println!("{:<28} {:.4}", p.label, p.value);
    }
    Ok(())
}
