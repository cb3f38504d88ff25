mod common;

use common::fixture;
use swc::repdoc::{parse_cohomology, parse_repdata, serialize_repdata};
use swcore::error::Error;
use swcore::f2algebra::Limits;

fn schema_location(e: Error) -> String {
    match e {
        Error::Schema { location, .. } => location,
        e => panic!("expected a schema error, got {e}"),
    }
}

#[test]
fn repdata_roundtrips() {
    for group in ["z4", "q8", "g16_11", "z2cubed"] {
        let once =
            serialize_repdata(&parse_repdata(&fixture(&format!("{group}.repdata.json"))).unwrap());
        let twice = serialize_repdata(&parse_repdata(&once).unwrap());
        assert_eq!(once, twice, "{group}");
    }
}

#[test]
fn repdata_rejects_unknown_fields() {
    let text = fixture("z4.repdata.json").replacen("\"reals\"", "\"colour\": 1, \"reals\"", 1);
    assert!(matches!(parse_repdata(&text), Err(Error::Schema { .. })));
}

#[test]
fn repdata_rejects_dangling_names() {
    let text = fixture("z4.repdata.json").replacen("\"real\": \"triv\"", "\"real\": \"nobody\"", 1);
    assert!(parse_repdata(&text).is_err());
}

#[test]
fn cohomology_reports_the_bad_relation() {
    let text = r#"{"generators": [{"name": "z", "degree": 1}, {"name": "x", "degree": 2}],
                   "relations": ["z^2", "z + x"]}"#;
    let loc = schema_location(parse_cohomology(text, &Limits::default()).unwrap_err());
    assert_eq!(loc, "relations[1]");
}

#[test]
fn cohomology_rejects_bad_names() {
    let text = r#"{"generators": [{"name": "2z", "degree": 1}]}"#;
    let loc = schema_location(parse_cohomology(text, &Limits::default()).unwrap_err());
    assert_eq!(loc, "generators[0]");
}

#[test]
fn cohomology_rejects_malformed_json() {
    assert!(matches!(
        parse_cohomology("{\"generators\": [", &Limits::default()),
        Err(Error::Schema { .. })
    ));
}
