//! Command-line front end: parse table files, run analyses, emit
//! deterministic reports. Exit 0 = success/pass, 1 = check failure,
//! 2 = input or usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hyperstruct::functors::{
    enumerate_homs, functoriality_check, is_hom_invariant, HomBudget, HomKind,
    RegularityMode, RelationAssignment, RelationKind,
};
use hyperstruct::hypergroup::Hypergroup;
use hyperstruct::modtensor::{
    tensor_fgab, theta_invariants, theta_tensor_member, verify_hypermodule,
};
use hyperstruct::quotients::{abelian_invariants, as_group, quotient, quotient_table_classwise};
use hyperstruct::relations::{
    enumerate_regular, enumerate_strongly_regular, is_regular, kernel, verify_correspondence,
};
use hyperstruct::{io, Error, FgAbGroup};

/// JSON report schema version emitted under the "schema" key.
const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "hyperstruct", version, about = "Finite hypergroup calculator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Good,
    Inclusion,
}

impl From<KindArg> for HomKind {
    fn from(k: KindArg) -> HomKind {
        match k {
            KindArg::Good => HomKind::Good,
            KindArg::Inclusion => HomKind::Inclusion,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the hypergroup axioms of a table file
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the classification flags of a table file
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compute a relation and print its blocks
    Relation {
        file: PathBuf,
        /// beta|gamma|alpha|delta|nabla|lambda|mod:<names>
        #[arg(long, default_value = "beta")]
        rel: String,
        /// tuple-length cap for alpha
        #[arg(long, default_value_t = 5)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// List the closed subhypergroups
    Subs {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate regular and strongly regular relations and audit the
    /// kernel correspondence
    Lattice {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Quotient by a relation; optionally reduce to abelian invariants
    Quotient {
        file: PathBuf,
        #[arg(long, default_value = "beta")]
        rel: String,
        #[arg(long, default_value_t = 5)]
        cap: usize,
        /// print the quotient group's invariant-factor form
        #[arg(long)]
        invariants: bool,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate homomorphisms between two table files
    Homs {
        src: PathBuf,
        dst: PathBuf,
        #[arg(long, value_enum, default_value_t = KindArg::Good)]
        kind: KindArg,
        /// require identity-preserving maps
        #[arg(long)]
        unital: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check hom-invariance and functoriality of a relation assignment
    /// over a universe manifest
    Invariance {
        #[arg(long)]
        universe: PathBuf,
        /// default relation for members the manifest leaves unset
        #[arg(long, default_value = "beta")]
        rel: String,
        #[arg(long, default_value_t = 5)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Good)]
        kind: KindArg,
        #[arg(long)]
        json: bool,
    },
    /// Sweep the integer-scalar hypermodule axioms
    Hypermodule {
        file: PathBuf,
        /// scalar magnitude cap
        #[arg(long, default_value_t = 4)]
        cap: i64,
        #[arg(long)]
        json: bool,
    },
    /// Tensor product of two abelian-group descriptors (e.g. Z_4 Z_6);
    /// with --member, also test a table file for membership in the
    /// resulting tensor class
    Tensor {
        a: String,
        b: String,
        #[arg(long)]
        member: Option<PathBuf>,
        #[arg(long, default_value = "beta")]
        rel: String,
        #[arg(long, default_value_t = 5)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run the bundled worked-example suite
    Demo {
        /// suite selector (reserved; the single bundled suite always runs)
        #[arg(default_value = "all")]
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn build_rel(
    h: &Hypergroup,
    rel: &str,
    cap: usize,
) -> Result<hyperstruct::EquivRelation, Error> {
    hyperstruct::functors::build_relation(h, &RelationKind::parse(rel, cap)?)
}

fn blocks_value(h: &Hypergroup, rel: &hyperstruct::EquivRelation) -> serde_json::Value {
    serde_json::from_str(&io::blocks_json(h, rel)).expect("blocks are valid json")
}

fn run(cmd: Cmd) -> Result<bool, Error> {
    match cmd {
        Cmd::Verify { file, json } => match io::load_hypergroup(&file) {
            Ok(h) => {
                if json {
                    println!("{}", json!({"schema": SCHEMA, "ok": true, "size": h.size()}));
                } else {
                    println!("ok: hypergroup axioms hold ({} elements)", h.size());
                }
                Ok(true)
            }
            Err(Error::Axioms(msg)) => {
                if json {
                    println!("{}", json!({"schema": SCHEMA, "ok": false, "failure": msg}));
                } else {
                    println!("fail: {msg}");
                }
                Ok(false)
            }
            Err(e) => Err(e),
        },
        Cmd::Classify { file, json } => {
            let h = io::load_hypergroup(&file)?;
            let f = h.flags();
            if json {
                println!(
                    "{}",
                    json!({
                        "schema": SCHEMA,
                        "size": h.size(),
                        "associative": f.associative,
                        "reproductive": f.reproductive,
                        "commutative": f.commutative,
                        "regular": f.regular,
                        "strongly_regular": f.strongly_regular,
                        "canonical": f.canonical,
                        "hg_class": f.hg_class,
                        "identities": h.subset_names(h.identities()),
                    })
                );
            } else {
                println!("size {}", h.size());
                println!("associative {}", f.associative);
                println!("reproductive {}", f.reproductive);
                println!("commutative {}", f.commutative);
                println!("regular {}", f.regular);
                println!("strongly_regular {}", f.strongly_regular);
                println!("canonical {}", f.canonical);
                println!("hg_class {}", f.hg_class);
                println!("identities {}", h.subset_names(h.identities()).join(","));
            }
            Ok(true)
        }
        Cmd::Relation { file, rel, cap, json } => {
            let h = io::load_hypergroup(&file)?;
            let r = build_rel(&h, &rel, cap)?;
            if json {
                let report = is_regular(&h, &r)?;
                println!(
                    "{}",
                    json!({
                        "schema": SCHEMA,
                        "relation": rel,
                        "blocks": blocks_value(&h, &r),
                        "regular": report.regular,
                        "strongly_regular": report.strongly_regular,
                    })
                );
            } else {
                println!("{}", io::blocks_json(&h, &r));
            }
            Ok(true)
        }
        Cmd::Subs { file, json } => {
            let h = io::load_hypergroup(&file)?;
            let subs = h.subhypergroups(true)?;
            if json {
                let list: Vec<Vec<String>> =
                    subs.iter().map(|s| h.subset_names(s.elements)).collect();
                println!("{}", json!({"schema": SCHEMA, "closed_subhypergroups": list}));
            } else {
                for s in &subs {
                    println!("{}", h.subset_names(s.elements).join(","));
                }
            }
            Ok(true)
        }
        Cmd::Lattice { file, json } => {
            let h = io::load_hypergroup(&file)?;
            let regular = enumerate_regular(&h)?;
            let strong = enumerate_strongly_regular(&h)?;
            let audit = verify_correspondence(&h)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "schema": SCHEMA,
                        "regular": regular.iter().map(|r| blocks_value(&h, r)).collect::<Vec<_>>(),
                        "strongly_regular": strong.iter().map(|r| blocks_value(&h, r)).collect::<Vec<_>>(),
                        "correspondence": audit.checks.iter()
                            .map(|(name, ok)| json!({"check": name, "ok": ok}))
                            .collect::<Vec<_>>(),
                        "passed": audit.passed(),
                    })
                );
            } else {
                println!("regular relations: {}", regular.len());
                for r in &regular {
                    println!("  {}", io::blocks_json(&h, r));
                }
                println!("strongly regular relations: {}", strong.len());
                for r in &strong {
                    println!("  {}", io::blocks_json(&h, r));
                }
                for (name, ok) in &audit.checks {
                    println!("{} {}", if *ok { "ok  " } else { "FAIL" }, name);
                }
            }
            Ok(audit.passed())
        }
        Cmd::Quotient { file, rel, cap, invariants, json } => {
            let h = io::load_hypergroup(&file)?;
            let r = build_rel(&h, &rel, cap)?;
            if invariants {
                let q = quotient(&h, &r)?;
                let inv = abelian_invariants(&as_group(&q)?)?;
                if json {
                    println!("{}", json!({"schema": SCHEMA, "invariants": inv.to_string()}));
                } else {
                    println!("{inv}");
                }
                return Ok(true);
            }
            // the classwise table is total even when representatives
            // disagree, so it is what gets printed
            let qt = quotient_table_classwise(&h, &r)?;
            let n = qt.names.len();
            if json {
                let table: Vec<Vec<Vec<String>>> = (0..n)
                    .map(|a| {
                        (0..n)
                            .map(|b| {
                                qt.cells[a * n + b]
                                    .iter()
                                    .map(|c| qt.names[c].clone())
                                    .collect()
                            })
                            .collect()
                    })
                    .collect();
                println!("{}", json!({"schema": SCHEMA, "classes": qt.names, "table": table}));
            } else {
                println!("{}", qt.names.join(" "));
                for a in 0..n {
                    let row: Vec<String> = (0..n)
                        .map(|b| {
                            qt.cells[a * n + b]
                                .iter()
                                .map(|c| qt.names[c].clone())
                                .collect::<Vec<_>>()
                                .join(",")
                        })
                        .collect();
                    println!("{}", row.join(" "));
                }
            }
            Ok(true)
        }
        Cmd::Homs { src, dst, kind, unital, json } => {
            let h = io::load_hypergroup(&src)?;
            let k = io::load_hypergroup(&dst)?;
            let homs = enumerate_homs(&h, &k, kind.into(), unital, &HomBudget::default())?;
            let name_image = |image: &[usize]| -> Vec<String> {
                image.iter().map(|&y| k.carrier().name(y).to_string()).collect()
            };
            if json {
                let list: Vec<serde_json::Value> = homs
                    .iter()
                    .map(|f| {
                        json!({
                            "image": name_image(&f.image),
                            "identity_preserving": f.identity_preserving,
                        })
                    })
                    .collect();
                println!("{}", json!({"schema": SCHEMA, "count": homs.len(), "homs": list}));
            } else {
                println!("{} homomorphisms", homs.len());
                for f in &homs {
                    println!("  [{}]", name_image(&f.image).join(","));
                }
            }
            Ok(true)
        }
        Cmd::Invariance { universe, rel, cap, kind, json } => {
            let loaded = io::load_manifest(&universe, cap)?;
            let default = RelationKind::parse(&rel, cap)?;
            let rels = loaded
                .rels
                .iter()
                .zip(0..loaded.universe.len())
                .map(|(r, i)| {
                    hyperstruct::functors::build_relation(
                        loaded.universe.member(i),
                        r.as_ref().unwrap_or(&default),
                    )
                })
                .collect::<Result<Vec<_>, _>>()?;
            let assignment =
                RelationAssignment::new(&loaded.universe, rels, RegularityMode::Regular)?;
            let budget = HomBudget::default();
            let report =
                is_hom_invariant(&loaded.universe, &assignment, kind.into(), false, &budget)?;
            let functorial = if report.invariant {
                Some(functoriality_check(
                    &loaded.universe,
                    &assignment,
                    kind.into(),
                    false,
                    &budget,
                )?)
            } else {
                None
            };
            let pair_name =
                |&(i, j): &(usize, usize)| -> String {
                    format!("{}->{}", loaded.universe.name(i), loaded.universe.name(j))
                };
            if json {
                println!(
                    "{}",
                    json!({
                        "schema": SCHEMA,
                        "invariant": report.invariant,
                        "characterizations_agree": report.characterizations_agree,
                        "homs_checked": report.homs_checked,
                        "skipped": report.skipped.iter().map(pair_name).collect::<Vec<_>>(),
                        "witness": report.witness.as_ref().map(|w| json!({
                            "hom": pair_name(&(w.src, w.dst)),
                            "image": w.image,
                        })),
                        "functorial": functorial.as_ref().map(|f| f.ok),
                    })
                );
            } else {
                println!("invariant {}", report.invariant);
                println!("characterizations_agree {}", report.characterizations_agree);
                println!("homs_checked {}", report.homs_checked);
                for p in &report.skipped {
                    println!("skipped {} (budget)", pair_name(p));
                }
                if let Some(w) = &report.witness {
                    println!("witness hom {} image {:?}", pair_name(&(w.src, w.dst)), w.image);
                }
                if let Some(f) = &functorial {
                    println!("functorial {}", f.ok);
                }
            }
            Ok(report.invariant && functorial.map_or(true, |f| f.ok))
        }
        Cmd::Hypermodule { file, cap, json } => {
            let h = io::load_hypergroup(&file)?;
            let report = verify_hypermodule(&h, cap)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "schema": SCHEMA,
                        "passed": report.passed(),
                        "ii_equality": report.ii_equality,
                        "iii_equality": report.iii_equality,
                        "violations": report.violations,
                    })
                );
            } else {
                println!("passed {}", report.passed());
                println!("ii_equality {}", report.ii_equality);
                println!("iii_equality {}", report.iii_equality);
                for v in &report.violations {
                    println!("violation {v}");
                }
            }
            Ok(report.passed())
        }
        Cmd::Tensor { a, b, member, rel, cap, json } => {
            let ta: FgAbGroup = a.parse()?;
            let tb: FgAbGroup = b.parse()?;
            let product = tensor_fgab(&ta, &tb);
            let membership = match &member {
                Some(path) => {
                    let h = io::load_hypergroup(path)?;
                    let r = build_rel(&h, &rel, cap)?;
                    Some(theta_tensor_member(&h, &r, &ta, &tb)?)
                }
                None => None,
            };
            if json {
                println!(
                    "{}",
                    json!({
                        "schema": SCHEMA,
                        "tensor": product.to_string(),
                        "member": membership,
                    })
                );
            } else {
                println!("{product}");
                if let Some(m) = membership {
                    println!("member {m}");
                }
            }
            Ok(membership.unwrap_or(true))
        }
        Cmd::Demo { suite: _ } => demo(),
    }
}

// The eight-element canonical table used throughout the demo suite.
const DEMO_TABLE: &str = "\
0 x y z u v -x -z
0 x y z u v -x -z
x y,v z,-x u x,-z -x 0,u y
y z,-x 0,u x y,v u x,-z -x
z u x v -x -z y 0
u x,-z y,v -x 0,u y z,-x x
v -x u -z y 0 x z
-x 0,u x,-z y z,-x x y,v u
-z y -x 0 x z u v
";

/// Runs the worked-example suite and prints one line per check.
fn demo() -> Result<bool, Error> {
    use hyperstruct::quotients::GroupTable;
    let ex = io::parse_text(DEMO_TABLE)?;
    let z6 = Hypergroup::from_group(&GroupTable::cyclic(6));
    let rn6 = Hypergroup::rn_hypergroup(6);
    let mut all = true;
    let mut check = |name: &str, ok: bool| {
        println!("{} {}", if ok { "ok  " } else { "FAIL" }, name);
        all &= ok;
    };

    let b = hyperstruct::relations::beta(&ex);
    check(
        "beta blocks {0,u},{x,-z},{y,v},{z,-x}",
        io::blocks_json(&ex, &b) == r#"[["0","u"],["x","-z"],["y","v"],["z","-x"]]"#,
    );
    check(
        "gamma equals beta",
        hyperstruct::relations::gamma(&ex)? == b,
    );
    check(
        "kernel of beta is {0,u}",
        ex.subset_names(kernel(&ex, &b)?.elements) == ["0", "u"],
    );
    let qb = abelian_invariants(&as_group(&quotient(&ex, &b)?)?)?;
    check("quotient by beta is Z_4", qb.to_string() == "Z_4");
    check(
        "kernel correspondence audit",
        verify_correspondence(&ex)?.passed(),
    );
    check(
        "six regular relations, three strongly regular",
        enumerate_regular(&ex)?.len() == 6 && enumerate_strongly_regular(&ex)?.len() == 3,
    );
    let hm = verify_hypermodule(&ex, 4)?;
    check("integer hypermodule axioms on the 8-element table", hm.passed());
    let hm_rows = verify_hypermodule(&rn6, 4)?;
    check(
        "integer hypermodule axioms on the row hypergroup (strict (iii))",
        hm_rows.passed() && !hm_rows.iii_equality,
    );
    check(
        "Z_4 tensor Z_6 = Z_2",
        tensor_fgab(&FgAbGroup::cyclic(4), &FgAbGroup::cyclic(6)).to_string() == "Z_2",
    );
    check(
        "theta of the table is Z_4",
        theta_invariants(&ex, &b)?.to_string() == "Z_4",
    );
    check(
        "theta-freeness: Z free, the 8-element table not",
        hyperstruct::functors::theta_free_check(&FgAbGroup::free(1))
            && !hyperstruct::functors::theta_free_check(&theta_invariants(&ex, &b)?),
    );
    // six good homs rows -> Z_6, none back
    let homs = enumerate_homs(&rn6, &z6, HomKind::Good, false, &HomBudget::default())?;
    let back = enumerate_homs(&z6, &rn6, HomKind::Good, false, &HomBudget::default())?;
    check("six good homs rows->Z_6 and none back", homs.len() == 6 && back.is_empty());
    // the non-invariant assignment: mod-2 rows on one side, diagonal on
    // the other
    let evens: hyperstruct::ElemSet =
        [0usize, 2, 4].iter().flat_map(|a| (0..6).map(move |b| a * 6 + b)).collect();
    let xi = hyperstruct::relations::congruence_mod(&rn6, evens)?;
    let u = hyperstruct::functors::Universe::new(vec![
        ("rows".into(), rn6.clone()),
        ("z6".into(), z6.clone()),
    ])?;
    let assignment = RelationAssignment::new(
        &u,
        vec![xi, hyperstruct::EquivRelation::identity(6)],
        RegularityMode::Regular,
    )?;
    let report = is_hom_invariant(&u, &assignment, HomKind::Good, false, &HomBudget::default())?;
    check(
        "mixed assignment rows/z6 is not hom-invariant",
        !report.invariant && report.characterizations_agree,
    );

    println!("{}", if all { "PASS" } else { "FAIL" });
    Ok(all)
}
