use bn_cells_web::{kl_json, rs_json, specialize_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn kl_rank_two() {
    let v = parse(kl_json(2).unwrap());
    assert_eq!(v["elements"].as_array().unwrap().len(), 8);
    assert_eq!(v["elements"][1]["terms"][0][1], "V^-1");
    assert!(kl_json(0).is_err() && kl_json(4).is_err());
}

#[test]
fn rs_shape() {
    let v = parse(rs_json("[-1,2]").unwrap());
    assert_eq!(v["shape"], "(1|1)");
    assert_eq!(v["q"], serde_json::json!({ "plus": [[2]], "minus": [[1]] }));
    assert!(rs_json("[1,1]").is_err());
}

#[test]
fn specialization() {
    assert_eq!(parse(specialize_json(2, 1, 2).unwrap())["preserved"], true);
    let lost = parse(specialize_json(2, 1, 1).unwrap());
    assert_eq!(lost["preserved"], false);
    assert_eq!(lost["canonical_fails"], true);
    assert!(specialize_json(2, 0, 1).is_err());
}
