//! Injective dimension of the regular module, Gorenstein-projectivity
//! certificates and the MCM approximation of the trivial module.

use eicat::catalg::{build_algebra, column_projective};
use eicat::catgen::{fixture, FixtureName};
use eicat::exactla::Field;
use eicat::gmodules::{build_ses, build_trivial};
use eicat::homalg::{certify_mcm_approximation, gorenstein_report, is_gorenstein_projective, projective_over_k, ExtRange};

fn main() {
    for f in FixtureName::ALL {
        for field in [Field::Rationals, Field::Prime(2)] {
            let cat = fixture(f);
            let alg = build_algebra(&cat, field);
            let r = gorenstein_report(&alg, 8);
            let range = ExtRange::from_report(&r, 8);
            let k = is_gorenstein_projective(&build_trivial(&alg), range);
            println!(
                "{f} over {field}: id {} / {}, projective over k {}, trivial module {:?}",
                r.id_left,
                r.id_right,
                projective_over_k(&cat, field).projective,
                k.verdict
            );
        }
    }

    let alg = build_algebra(&fixture(FixtureName::Z2Orb), Field::Prime(2));
    let ses = build_ses(&alg).unwrap();
    let probes = vec![
        ("C1".to_string(), column_projective(&alg, 1).unwrap()),
        ("C2".to_string(), column_projective(&alg, 2).unwrap()),
        ("E".to_string(), ses.e.module.clone()),
    ];
    let range = ExtRange::from_report(&gorenstein_report(&alg, 8), 8);
    let cert = certify_mcm_approximation(&ses.projection, &probes, range, 8).unwrap();
    println!("E -> k special {}, kernel pd {}, probes {:?}", cert.special, cert.kernel_pd, cert.probes);
}
