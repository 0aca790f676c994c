//! Parsing, canonical JSON and content hashes of presentations.

use subshift_k::shift::io::{canonical_json, content_hash, parse_presentation};

fn main() -> subshift_k::Result<()> {
    let texts = [
        r#"{"type":"sft","alphabet":["0","1"],"forbidden":[["1","1"]]}"#,
        r#"{"type":"sofic","states":["a","b"],"edges":[["a","a","1"],["a","b","0"],["b","a","0"]]}"#,
        r#"{"type":"finite","alphabet":["0","1"],"points":[{"pre":["1"],"per":["0"]}]}"#,
    ];
    for text in texts {
        let p = parse_presentation(text)?;
        println!("{} {}", &content_hash(&p)[..16], canonical_json(&p));
    }
    match parse_presentation("{\"type\":\"sft\",\n\"alphabet\":[\"0\"], \"extra\": 1}") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
