#![allow(dead_code)]

use std::path::PathBuf;

use qsquare::cli::{run, Outcome};

/// Golden-file commands: (file stem, arguments).
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("classify_contrary", &["classify", "spin_half_x", "u_x", "d_x"]),
    ("classify_contradictory", &["classify", "spin_half_x", "u_x", "!u_x", "--format", "json"]),
    ("classify_subcontrary", &["classify", "spin_half_x", "!u_x", "!d_x"]),
    ("classify_compound", &["classify", "three_level", "level.a", "!level.b", "--format", "json"]),
    ("hexagon_spin_half_x", &["hexagon", "spin_half_x", "u_x", "d_x"]),
    ("hexagon_spin_half_x_dot", &["hexagon", "spin_half_x", "u_x", "d_x", "--format", "dot"]),
    ("hexagon_spin_half_x_json", &["hexagon", "spin_half_x", "u_x", "d_x", "--format", "json"]),
    ("hexagon_cat", &["hexagon", "cat", "dead", "alive"]),
    ("square_three_level", &["square", "three_level", "a", "b"]),
    ("prob_skewed", &["prob", "skewed", "psi", "x", "--format", "json"]),
    ("prob_up_z", &["prob", "spin_half_x", "up_z", "x"]),
    ("attribute_minimal", &["attribute", "spin_half_x", "up_z", "x", "--semantics", "minimal"]),
    ("attribute_paraconsistent", &["attribute", "spin_half_x", "up_z", "x", "--semantics", "paraconsistent"]),
    ("lp_postulate_classical", &["lp", "postulate", "s1", "s2", "--mode", "classical"]),
    ("lp_postulate_lp", &["lp", "postulate", "s1", "s2", "--mode", "lp"]),
    ("lp_postulate_exclusive", &["lp", "postulate", "s1", "s2", "--exclusive", "--format", "json"]),
    ("lp_chain_classical", &["lp", "chain", "a", "b", "c", "--conclude", "p_a <-> !p_a", "--mode", "classical"]),
    ("lp_chain_lp", &["lp", "chain", "a", "b", "c", "--conclude", "p_a <-> !p_a", "--mode", "lp", "--format", "json"]),
    ("lp_check_explosion", &["lp", "check", "p", "!p", "--conclude", "q"]),
    ("scenario_list", &["scenario", "list"]),
    ("scenario_show_skewed", &["scenario", "show", "skewed"]),
    ("scenario_run_spin_half_x", &["scenario", "run", "spin_half_x", "--format", "json"]),
    ("scenario_run_double_slit", &["scenario", "run", "double_slit"]),
    ("scenario_run_cat", &["scenario", "run", "cat"]),
    ("scenario_run_three_level", &["scenario", "run", "three_level"]),
    ("scenario_run_skewed", &["scenario", "run", "skewed", "--format", "json"]),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Everything a golden file records about one invocation.
pub fn transcript(out: &Outcome) -> String {
    format!("{}--- stderr\n{}--- exit {}\n", out.stdout, out.stderr, out.code)
}

pub fn run_args(args: &[&str]) -> Outcome {
    run(args.iter().copied())
}
