mod common;

use std::collections::BTreeSet;

use common::*;
use ltkit::dictionary::Restriction;
use ltkit::dix::{parse_dix, write_dix};
use ltkit::expand::{expand, path_count};
use ltkit::fst::{compile, load, minimize, save, Direction};
use ltkit::synth::{random_dictionary, RandomDictParams};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BOTH: [Direction; 2] = [Direction::LeftToRight, Direction::RightToLeft];

fn dict(seed: u64) -> ltkit::dictionary::MonodixDictionary {
    let params = RandomDictParams { restricted: 0.25, ..Default::default() };
    random_dictionary(&mut ChaCha8Rng::seed_from_u64(seed), params)
}

fn expanded(d: &ltkit::dictionary::MonodixDictionary) -> BTreeSet<OraclePair> {
    expand(d)
        .unwrap()
        .into_iter()
        .map(|p| {
            let (lr, rl) = (p.restriction.admits(Direction::LeftToRight), p.restriction.admits(Direction::RightToLeft));
            (p.surface_text(), p.lexical_text(), lr, rl)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expander_matches_oracle(seed in any::<u64>()) {
        let d = dict(seed);
        prop_assert_eq!(expanded(&d), oracle_pairs(&d));
        prop_assert!(path_count(&d).unwrap() >= oracle_pairs(&d).len());
    }

    #[test]
    fn compiled_lookup_matches_oracle(seed in any::<u64>()) {
        let d = dict(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for dir in BOTH {
            let expected = oracle_map(&d, dir);
            let probes = random_probes(&mut rng, dir, 200);
            let t = compile(&d, dir).unwrap();
            prop_assert_eq!(check_against_oracle(&t, &expected, &probes).map(|_| ()), Ok(()));
            let m = minimize(&t);
            prop_assert_eq!(check_against_oracle(&m, &expected, &probes).map(|_| ()), Ok(()));
            prop_assert!(m.state_count() <= t.state_count());
            prop_assert_eq!(save(&minimize(&m)), save(&m));
        }
    }

    #[test]
    fn flip_swaps_directions(seed in any::<u64>()) {
        let d = dict(seed);
        let f = d.flip();
        prop_assert!(f.validate().is_empty());
        prop_assert_eq!(f.flip(), d.clone());
        let swapped: BTreeSet<OraclePair> =
            oracle_pairs(&d).into_iter().map(|(s, l, lr, rl)| (l, s, rl, lr)).collect();
        prop_assert_eq!(oracle_pairs(&f), swapped);
        for dir in BOTH {
            prop_assert_eq!(oracle_map(&f, dir), oracle_map(&d, dir.flip()));
        }
        // the generator of d and the analyzer of flip(d) are the same machine
        let g = minimize(&compile(&d, Direction::RightToLeft).unwrap());
        let a = minimize(&compile(&f, Direction::LeftToRight).unwrap());
        prop_assert_eq!(g.state_count(), a.state_count());
        prop_assert_eq!(g.transition_count(), a.transition_count());
        let expected = oracle_map(&d, Direction::RightToLeft);
        prop_assert!(check_against_oracle(&a, &expected, &[]).is_ok());
    }

    #[test]
    fn dix_and_binary_round_trip(seed in any::<u64>()) {
        let d = dict(seed);
        let xml = write_dix(&d);
        prop_assert_eq!(parse_dix(&xml).unwrap(), d.clone());
        for dir in BOTH {
            let t = minimize(&compile(&d, dir).unwrap());
            let bytes = save(&t);
            prop_assert_eq!(save(&load(&bytes).unwrap()), bytes);
        }
    }
}

#[test]
fn restricted_paths_follow_intersection() {
    let xml = r#"<dictionary>
  <sdefs><sdef n="n"/><sdef n="pl"/></sdefs>
  <pardefs>
    <pardef n="s"><e r="RL"><p><l>s</l><r><s n="pl"/></r></p></e><e><p><l></l><r><s n="n"/></r></p></e></pardef>
  </pardefs>
  <section id="main" type="standard">
    <e r="LR"><i>cat</i><par n="s"/></e>
    <e r="RL"><i>dog</i><par n="s"/></e>
  </section>
</dictionary>"#;
    let d = parse_dix(xml).unwrap();
    let pairs = oracle_pairs(&d);
    // LR entry meeting an RL suffix is dropped
    assert!(!pairs.iter().any(|p| p.0 == "cats"));
    assert!(pairs.contains(&("cat".into(), "cat<n>".into(), true, false)));
    assert!(pairs.contains(&("dogs".into(), "dog<pl>".into(), false, true)));
    assert_eq!(expanded(&d), pairs);
    assert!(expand(&d).unwrap().iter().all(|p| p.restriction != Restriction::Bidirectional));

    let analyzer = compile(&d, Direction::LeftToRight).unwrap();
    assert_eq!(analyzer.lookup_str("cat"), ["cat<n>"]);
    assert!(analyzer.lookup_str("dogs").is_empty());
    let generator = compile(&d, Direction::RightToLeft).unwrap();
    assert_eq!(generator.lookup_str("dog<pl>"), ["dogs"]);
    assert!(generator.lookup_str("cat<n>").is_empty());
}
