//! Depth check for the four shortest dead ends (length 11, p=1): each
//! has depth exactly 2, certified by exhausting extensions of length
//! up to 3 and checking both orientations of the escape family.

use thompson_metric::diagram::TreePairDiagram;
use thompson_metric::families::verify_depth_two;

fn main() {
    let keys = [
        "p=1;neg=((.(..))((..)(.((..).))));pos=((((..).).)(.(.(.(..)))))",
        "p=1;neg=(((..).)((..)(.((..).))));pos=(((.(..)).)(.(.(.(..)))))",
        "p=1;neg=((.(..))((..)(.(.(..)))));pos=((((..).).)(.(.((..).))))",
        "p=1;neg=(((..).)((..)(.(.(..)))));pos=(((.(..)).)(.(.((..).))))",
    ];
    for key in keys {
        let d = TreePairDiagram::parse(key).unwrap();
        let r = verify_depth_two(&d).unwrap();
        println!(
            "depth2={} two_stay={} witness={} mirrored={} escape={}  {key}",
            r.depth_is_two,
            r.two_letter_extensions_stay,
            r.witness_family_escapes,
            r.mirrored_witness_family_escapes,
            r.three_letter_escape_exists
        );
    }
}
