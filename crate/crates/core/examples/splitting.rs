//! When does E -> k split? The smallest-object construction against a
//! complete linear search for sections.

use eicat::catalg::build_algebra;
use eicat::catgen::{fixture, FixtureName};
use eicat::exactla::Field;
use eicat::gmodules::{build_ses, find_section, smallest_object_section};

fn main() {
    for f in [FixtureName::Arrow, FixtureName::Z2Orb, FixtureName::Kron] {
        let alg = build_algebra(&fixture(f), Field::Rationals);
        let ses = build_ses(&alg).unwrap();
        let solved = find_section(&ses.projection).unwrap();
        match smallest_object_section(&alg, &ses, None) {
            Ok(s) => println!(
                "{f}: splits {} via {}, independent of choice {}, sections form a space of dim {}",
                s.splits,
                alg.category().object_name(s.smallest),
                s.independent_of_choice,
                solved.solution_dim
            ),
            Err(e) => println!("{f}: {e}; linear search finds a section: {}", solved.exists()),
        }
    }
}
