use verlinde_web::{alcove_json, dimension_json, fold_json, fusion_json};

#[test]
fn alcove_lists_one_point_per_weight() {
    let v = alcove_json("A", 3, "diagram2", 1).unwrap();
    assert_eq!(v["fixed"], "C2");
    assert_eq!(v["points"].as_array().unwrap().len(), 2);
    assert_eq!(v["order_tsigma"], "50");
}

#[test]
fn fold_reports_sign_and_wall() {
    let v = fold_json("A", 1, "identity", 1, "[3]").unwrap();
    assert_eq!(v["status"], "interior");
    assert_eq!(v["weight"], serde_json::json!([1]));
    assert_eq!(v["sign"], -1);
    let v = fold_json("A", 1, "identity", 1, "[2]").unwrap();
    assert_eq!(v["status"], "wall");
    assert!(fold_json("A", 1, "identity", 1, "[1,2]").is_err());
}

#[test]
fn fusion_table_has_unit_row() {
    let v = fusion_json("D", 4, "diagram3", 2).unwrap();
    let table = &v["table"];
    // Row of the vacuum is the identity matrix.
    for (m, row) in table[0].as_array().unwrap().iter().enumerate() {
        for (e, x) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(x.as_i64().unwrap(), (m == e) as i64);
        }
    }
}

#[test]
fn dimension_pipelines_agree() {
    let v = dimension_json("A", 3, "diagram2", 1, 1, "[[1,0],[1,0]]", "[[0,1,0]]").unwrap();
    assert_eq!(v["agree"], true);
    assert!(dimension_json("A", 3, "diagram4", 1, 1, "", "").is_err());
    assert!(dimension_json("A", 3, "diagram2", 1, 0, "", "[[0,0,0]]").is_err());
}
