use magiclab_core::families::{family_witness, label_family_via_qmr, theta_k_ab, theta_mk_ab, theta_mc_lex, Family};
use magiclab_core::graph::build_cycle;
use magiclab_core::labeling::verify_s_magic;
use magiclab_core::tables::{all_tables, cell_k_ab, cell_mc_lex, cell_mk_ab, Cell};

fn dmg(cell: Cell) -> Option<bool> {
    match cell {
        Cell::Dmg => Some(true),
        Cell::NotDmg => Some(false),
        _ => None,
    }
}

#[test]
fn indices_agree_with_tables() {
    for m in 1..=4 {
        for a in 2..=6 {
            for b in 2..=8 {
                if m == 1 {
                    let t = theta_k_ab(a, b).unwrap();
                    if let Some(d) = dmg(cell_k_ab(a, b)) {
                        assert_eq!(t.theta() == Some(0), d, "K({a},{b})");
                    }
                }
                if m > 1 {
                    let t = theta_mk_ab(m, a, b).unwrap();
                    if let Some(d) = dmg(cell_mk_ab(m, a, b)) {
                        assert_eq!(t.theta() == Some(0), d, "{m}K({a},{b})");
                    }
                }
                if b >= 3 {
                    let t = theta_mc_lex(m, a, b).unwrap();
                    if let Some(d) = dmg(cell_mc_lex(m, a, b)) {
                        assert_eq!(t.theta() == Some(0), d, "{m}(C{b} lex E{a})");
                    }
                }
            }
        }
    }
}

#[test]
fn qmr_labels_lex_cycle() {
    let f = Family::LexRegular { g: build_cycle(6).unwrap(), a: 3 };
    let w = label_family_via_qmr(&f).unwrap();
    let g = f.graph().unwrap();
    let report = verify_s_magic(&g, &w.labeling).unwrap();
    assert!(report.is_magic);
    assert_eq!(report.constant, Some(w.constant));
    assert_eq!(w.labeling.eta(), 19);
}

#[test]
fn family_witnesses_are_magic() {
    let fams = [
        Family::Kab { a: 3, b: 2 },
        Family::Kab { a: 5, b: 2 },
        Family::Mkab { m: 2, a: 3, b: 3 },
        Family::Mclex { m: 1, a: 3, b: 6 },
    ];
    for f in fams {
        if let Some(w) = family_witness(&f).unwrap() {
            let g = f.graph().unwrap();
            assert!(verify_s_magic(&g, &w.labeling).unwrap().is_magic);
        }
    }
}

#[test]
fn tables_serialize() {
    for t in all_tables() {
        let v = t.to_json();
        assert_eq!(v["cells"].as_array().unwrap().len(), t.rows.len());
        assert!(t.to_string().starts_with(&format!("Table {}", t.id)));
    }
}
