use oriented_zcl::bounds::{bounds_row, BoundsRow};
use oriented_zcl::groebner::{closed_form_basis, BasisDocument};
use oriented_zcl::quotient::{build_quotient, Heights};
use oriented_zcl::tables::{g_table, render, zcl_range, Format, GRow, HeightsRow};
use oriented_zcl::zcl::ZclResult;
use oriented_zcl::{Monomial, Poly};

fn round_trip<T: serde::Serialize + serde::de::DeserializeOwned + PartialEq + std::fmt::Debug>(x: &T) {
    let text = serde_json::to_string(x).unwrap();
    assert_eq!(&serde_json::from_str::<T>(&text).unwrap(), x, "{text}");
}

#[test]
fn every_emitted_schema_round_trips() {
    for n in [7, 15, 22, 40] {
        round_trip(&BasisDocument::new(n, &closed_form_basis(n).unwrap()));
        round_trip(&build_quotient(n).unwrap().heights());
    }
    round_trip(&Poly::from_terms([Monomial::new(3, 0), Monomial::new(0, 2)]));
    round_trip(&Poly::zero());
    round_trip(&Heights { h2: 1, h3: 2 });
    for r in zcl_range(6, 24, None).unwrap() {
        round_trip::<ZclResult>(&r);
        round_trip::<BoundsRow>(&bounds_row(r.n.max(15), r.zcl).unwrap());
    }
}

#[test]
fn rendered_tables_parse_back() {
    let rows = g_table(0, 26);
    let back: Vec<GRow> = serde_json::from_str(&render(&rows, Format::Json)).unwrap();
    assert_eq!(back, rows);
    let rows = vec![HeightsRow { n: 7, h2: 4, h3: 2 }];
    let back: Vec<HeightsRow> = serde_json::from_str(&render(&rows, Format::Json)).unwrap();
    assert_eq!(back, rows);
}

#[test]
fn basis_document_shape() {
    let doc = serde_json::to_value(BasisDocument::new(15, &closed_form_basis(15).unwrap())).unwrap();
    assert_eq!(doc["n"], 15);
    assert_eq!(doc["t"], 4);
    assert_eq!(doc["polys"][0]["lm"], serde_json::json!({"b": 7, "c": 0}));
    assert_eq!(doc["polys"][0]["terms"][1], serde_json::json!({"b": 4, "c": 2}));
}
