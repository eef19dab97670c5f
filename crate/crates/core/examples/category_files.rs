//! Fixtures, validation, structural properties and the category file format.

use eicat::catgen::{fixture, FixtureName};
use eicat::cli::{export_category, parse_category_file};
use eicat::exactla::Field;
use eicat::fincat::{category_properties, object_order, smallest_object};

fn main() {
    for f in FixtureName::ALL {
        let cat = fixture(f);
        let props = category_properties(&cat);
        let order: Vec<&str> = object_order(&cat).unwrap().objects().iter().map(|&x| cat.object_name(x)).collect();
        println!(
            "{f}: {} morphisms, EI {} skeletal {} connected {}, order {order:?}, smallest {:?}",
            cat.num_morphisms(),
            props.is_ei,
            props.is_skeletal,
            props.is_connected,
            smallest_object(&cat).map(|x| cat.object_name(x).to_string()),
        );
    }
    let text = export_category(&fixture(FixtureName::Z2Orb), Field::Prime(2));
    print!("{text}");
    let back = parse_category_file(&text).unwrap();
    assert_eq!(back.export(), text);
}
