mod common;

use common::{fixture_names, load_fixture};
use schemeforge_core::exact::int;
use schemeforge_core::{fixtures, parse_matrix, serialize_matrix};

#[test]
fn files_match_builders() {
    assert_eq!(load_fixture("fig1.mat"), fixtures::fig1());
    assert_eq!(load_fixture("fig2.mat"), fixtures::fig2());
    assert_eq!(load_fixture("two_weight_prism.mat"), fixtures::two_weight_prism());
    for n in 3..=8 {
        assert_eq!(load_fixture(&format!("cyclic_{n}.mat")), fixtures::cyclic(n, &int(1)));
    }
    for n in [4, 5] {
        assert_eq!(load_fixture(&format!("complete_{n}.mat")), fixtures::complete(n));
    }
}

#[test]
fn parse_serialize_identity_on_every_fixture() {
    let names = fixture_names();
    assert!(names.len() >= 11);
    for name in names {
        let m = load_fixture(&name);
        let text = serialize_matrix(&m);
        assert_eq!(parse_matrix(&text).unwrap(), m, "{name}");
        assert_eq!(serialize_matrix(&parse_matrix(&text).unwrap()), text);
    }
}
