//! The five category builders, validated and summarized.

use fincat::builders::{BuilderDescription, Limits};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let descriptions = [
        r#"{"builder": "finset", "sets": [{"name": "1", "elements": ["*"]}, {"name": "2", "elements": ["0", "1"]}]}"#,
        r#"{"builder": "finrel", "sets": [{"name": "2", "elements": ["0", "1"]}]}"#,
        r#"{"builder": "poset", "elements": ["1", "2", "3", "6"], "leq": [["1","2"],["1","3"],["1","6"],["2","6"],["3","6"]]}"#,
        r#"{"builder": "monoid", "elements": ["e", "g"], "mult": [["e","g"],["g","e"]], "unit": "e"}"#,
        r#"{"builder": "mat", "p": 2, "max_dim": 2}"#,
    ];
    for text in descriptions {
        let desc: BuilderDescription = serde_json::from_str(text)?;
        let cat = desc.build(&Limits::default())?;
        let report = cat.validate();
        println!(
            "{:<7} {} objects, {:>3} arrows, laws hold: {}",
            text.split('"').nth(3).unwrap_or("?"),
            cat.object_count(),
            cat.arrow_count(),
            report.ok
        );
    }
    Ok(())
}
