#![allow(dead_code)]

use ds2_core::{DialogueState, TemplateConfig};

pub fn state(pairs: &[(&str, &str)]) -> DialogueState {
    pairs.iter().copied().collect()
}

/// Per-domain examples: (state in listing order, natural summary).
pub fn domain_goldens() -> Vec<(DialogueState, &'static str)> {
    vec![
        (
            state(&[
                ("taxi-departure", "london station"),
                ("taxi-destination", "Incheon airport"),
                ("taxi-arriveby", "12:30"),
                ("taxi-leaveat", "02:45"),
            ]),
            "The user is looking for a taxi from london station to Incheon airport, which leaves at 02:45 and arrives by 12:30.",
        ),
        (
            state(&[
                ("train-departure", "norwich"),
                ("train-destination", "cambridge"),
                ("train-arriveby", "19:45"),
                ("train-book people", "3"),
                ("train-leaveat", "11:21"),
                ("train-day", "monday"),
            ]),
            "The user is looking for a train for 3 people from norwich to cambridge on monday, which leaves at 11:21 and arrives by 19:45.",
        ),
        (
            state(&[
                ("hotel-type", "hotel"),
                ("hotel-name", "Intercontinental"),
                ("hotel-stars", "3"),
                ("hotel-pricerange", "cheap"),
                ("hotel-area", "east"),
                ("hotel-book people", "6"),
                ("hotel-book day", "saturday"),
                ("hotel-book stay", "3"),
                ("hotel-parking", "yes"),
                ("hotel-internet", "no"),
            ]),
            "The user is looking for a place to stay which is a hotel called Intercontinental ranked 3 stars with a cheap price located in the east for 6 people on saturday for 3 days, which has parking and has no internet.",
        ),
        (
            state(&[
                ("restaurant-book day", "tuesday"),
                ("restaurant-book people", "6"),
                ("restaurant-book time", "12:00"),
                ("restaurant-name", "meze bar"),
                ("restaurant-pricerange", "cheap"),
                ("restaurant-area", "south"),
                ("restaurant-food", "seafood"),
            ]),
            "The user is looking for a restaurant called meze bar located in the south with a cheap price for 6 people on tuesday at 12:00, which serves seafood.",
        ),
    ]
}

/// The attraction row whose phrase order (type before name) disagrees with
/// the single-domain attraction example.
pub fn attraction_listing_golden() -> (DialogueState, &'static str) {
    (
        state(&[
            ("attraction-area", "cambridge"),
            ("attraction-name", "nusha"),
            ("attraction-type", "entertainment"),
        ]),
        "The user is looking for an attraction which is an entertainment called nusha located in the cambridge.",
    )
}

pub fn attraction_example() -> (DialogueState, &'static str) {
    (
        state(&[
            ("attraction-name", "byard art"),
            ("attraction-type", "museum"),
            ("attraction-area", "center"),
        ]),
        "The user is looking for an attraction called byard art which is a museum located in the center.",
    )
}

pub fn multi_domain_golden() -> (DialogueState, &'static str) {
    (
        state(&[
            ("train-book people", "3"),
            ("train-departure", "london station"),
            ("train-destination", "Incheon airport"),
            ("restaurant-name", "meze bar"),
            ("restaurant-book day", "tuesday"),
            ("restaurant-book time", "12:00"),
            ("hotel-type", "guesthouse"),
            ("hotel-name", "Intercontinental"),
            ("hotel-stars", "3"),
        ]),
        "The user is looking for a train for 3 people from london station to Incheon airport. Also, he is searching for a restaurant called meze bar on tuesday at 12:00. Also, he looks for a place to stay which is a guesthouse called Intercontinental ranked 3 stars.",
    )
}

/// Ablation example state (hotel then train, listing order).
pub fn ablation_state() -> DialogueState {
    state(&[
        ("hotel-area", "dontcare"),
        ("hotel-pricerange", "moderate"),
        ("hotel-internet", "yes"),
        ("hotel-type", "guesthouse"),
        ("train-book people", "3"),
        ("train-leaveat", "10:30"),
        ("train-destination", "cambridge"),
        ("train-day", "tuesday"),
        ("train-departure", "kings lynn"),
    ])
}

/// Expected summary per ablation variant, in `TemplateConfig::ablation_variants` order.
pub fn ablation_goldens() -> [(TemplateConfig, &'static str); 5] {
    [
        (
            TemplateConfig::natural(true, true),
            "The user is looking for a place to stay which is a guesthouse with a moderate price, which has internet, and he does not care about the location. Also, he is searching for a train for 3 people from kings lynn to cambridge on tuesday, which leaves at 10:30.",
        ),
        (
            TemplateConfig::natural(true, false),
            "The user is looking for a place to stay which is a guesthouse with a moderate price, which has internet. He does not care about the location. Also, he is searching for a train for 3 people from kings lynn to cambridge on tuesday, which leaves at 10:30.",
        ),
        (
            TemplateConfig::natural(false, true),
            "The user is looking for a place to stay which is a guesthouse with a moderate price, which has internet, and the user does not care about the location. Also, the user is looking for a train for 3 people from kings lynn to cambridge on tuesday, which leaves at 10:30.",
        ),
        (
            TemplateConfig::natural(false, false),
            "The user is looking for a place to stay which is a guesthouse with a moderate price, which has internet. The user does not care about the location. Also, the user is looking for a train for 3 people from kings lynn to cambridge on tuesday, which leaves at 10:30.",
        ),
        (
            TemplateConfig::unnatural(),
            "The user wants dontcare as area of hotel, moderate as pricerange of hotel, yes as internet of hotel, guesthouse as type of hotel, 3 as book people of train, 10:30 as leaveat of train, cambridge as destination of train, tuesday as day of train, kings lynn as departure of train.",
        ),
    ]
}

/// Candidate/reference pairs scored independently with NLTK's
/// `corpus_bleu` (smoothing method1, epsilon 1e-9), one pair at a time.
pub const BLEU_CASES: [(&str, &str, f64); 20] = [
    ("The user is looking for a taxi from london station to Incheon airport, which leaves at 02:45.",
     "The user is looking for a taxi from london station to Incheon airport, which leaves at 02:45 and arrives by 12:30.",
     0.7390718666167673),
    ("The user is looking for an attraction called byard art which is a museum located in the center.",
     "The user is looking for an attraction called byard art which is a museum located in the center.",
     1.0),
    ("The user is looking for a restaurant called meze bar.", "The user is looking for a restaurant located in the south.", 0.5781396287180781),
    ("a b c d e", "a c e b d", 8.034284189446515e-08),
    ("the cat sat on the mat", "the cat is on the mat", 0.0025406637407730743),
    ("he looks for a train", "Also, he looks for a train on monday, which leaves at 10:30.", 0.2465969639416065),
    ("The user wants 3 as book people of train.", "The user wants 3 as book people of train, cambridge as destination of train.", 0.5274645526219217),
    ("one two three four five six seven", "one two three four five six seven eight nine", 0.7514772930752859),
    ("The user is looking for a place to stay which is a guesthouse with a moderate price, which has internet.",
     "The user is looking for a place to stay which is a guesthouse with a moderate price, which has internet, and he does not care about the location.",
     0.6339495588848284),
    ("x", "x", 1.7782794100389237e-07),
    ("x y", "x z", 1.4953487812212206e-07),
    ("the the the the", "the cat", 8.034284189446515e-08),
    ("The user is looking for a train for 3 people from norwich to cambridge on monday.",
     "The user is looking for a train for 3 people from cambridge to norwich on monday.",
     0.7339063301643075),
    ("which has parking and has no internet", "which has no parking and has internet", 0.0024028114141347555),
    ("Also, he is searching for a restaurant called meze bar on tuesday at 12:00.",
     "Also, he is searching for a restaurant called meze bar on tuesday at 12:00.",
     1.0),
    ("a a a b b b", "a b a b a b", 1.1362193664674985e-05),
    ("The user is looking for a hotel", "the user is looking for a hotel", 0.8091067115702212),
    ("located in the east for 6 people on saturday for 3 days", "located in the east for 6 people on saturday for 2 days", 0.8265168183793802),
    ("The user is looking for an attraction which is a museum, and he does not care about the location.",
     "The user is looking for an attraction which is a museum. He does not care about the location.",
     0.7331765459202478),
    ("ranked 3 stars with a cheap price", "ranked 4 stars with an expensive price located in the west", 4.691123872354158e-06),
];

/// NLTK corpus-level score over all twenty pairs.
pub const BLEU_CORPUS: f64 = 0.6735384183702525;

/// ROUGE cases tallied by hand: (candidate, reference, n, F1).
pub const ROUGE_CASES: [(&str, &str, usize, f64); 5] = [
    // unigrams: 4 of 5 shared on each side
    ("the user wants a taxi", "the user wants a train", 1, 0.8),
    // bigrams: 3 of 4 shared
    ("the user wants a taxi", "the user wants a train", 2, 0.75),
    // 4-grams: 1 of 2 shared
    ("the user wants a taxi", "the user wants a train", 4, 0.5),
    // clipped counts a:min(3,1) + b:min(1,2) = 2; p = 2/4, r = 2/3
    ("a a a b", "a b b", 1, 4.0 / 7.0),
    // identical after lowercasing
    ("Also, He looks", "also, he looks", 2, 1.0),
];

/// Eight (pred, gold) turns; 3 agree on attraction slots, 1 agrees fully.
pub fn jga_suite() -> Vec<(DialogueState, DialogueState)> {
    let a = |area: &str| state(&[("attraction-area", area), ("hotel-stars", "4")]);
    let other = state(&[("hotel-stars", "5")]);
    vec![
        (a("east"), a("east")),
        (a("west"), a("east")),
        (state(&[("attraction-area", "east")]), a("east")),
        (other.clone(), a("east")),
        (a("north"), a("south")),
        (a("center"), state(&[("attraction-name", "nusha"), ("attraction-area", "center")])),
        (other, state(&[("taxi-departure", "x")])),
        (DialogueState::new(), state(&[("attraction-type", "museum")])),
    ]
}

/// Five (pred, gold) turns: 4/7 active slots right, 141/143 inactive slots left empty.
pub fn slot_suite() -> Vec<(DialogueState, DialogueState)> {
    vec![
        (state(&[("hotel-area", "east")]), state(&[("hotel-area", "east"), ("hotel-stars", "4")])),
        (state(&[("taxi-departure", "a")]), DialogueState::new()),
        (
            state(&[("train-day", "monday"), ("train-arriveby", "18:30")]),
            state(&[("train-day", "monday"), ("train-leaveat", "18:30")]),
        ),
        (state(&[("restaurant-food", "dontcare")]), state(&[("restaurant-food", "dontcare")])),
        (
            state(&[("attraction-name", "nusha"), ("attraction-area", "center")]),
            state(&[("attraction-name", "nusha"), ("attraction-area", "centre")]),
        ),
    ]
}

/// Six mixed-domain (pred, gold) turns.
pub fn mixed_suite() -> Vec<(DialogueState, DialogueState)> {
    let hotel_train = |day: &str| state(&[("hotel-area", "east"), ("train-day", day)]);
    vec![
        (hotel_train("monday"), hotel_train("monday")),
        (hotel_train("tuesday"), hotel_train("monday")),
        (
            state(&[("restaurant-food", "thai"), ("taxi-leaveat", "10:00")]),
            state(&[("restaurant-food", "thai")]),
        ),
        (DialogueState::new(), DialogueState::new()),
        (
            state(&[("taxi-departure", "y"), ("taxi-destination", "x")]),
            state(&[("taxi-departure", "x"), ("taxi-destination", "y")]),
        ),
        (
            state(&[("hotel-parking", "yes"), ("hotel-internet", "yes")]),
            state(&[("hotel-parking", "yes"), ("hotel-internet", "dontcare")]),
        ),
    ]
}

/// Brute-force tallies for [`mixed_suite`]: all-domain JGA, per-domain JGA
/// in `Domain::ALL` order, slot true and none accuracy.
pub const MIXED_SUITE_EXPECTED: (f64, [f64; 5], f64, f64) =
    (1.0 / 3.0, [1.0, 5.0 / 6.0, 1.0, 2.0 / 3.0, 5.0 / 6.0], 5.0 / 9.0, 170.0 / 171.0);
