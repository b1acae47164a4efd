use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use dodeca_core::cosets::{
    action_from_table, core, finite_subgroup_classes, image_summary, low_index_classes, low_index_classes_with_jobs,
    PermutationAction, Provenance, DEFAULT_CLOSURE_BOUND,
};
use dodeca_core::cubecomplex::{cubulate, npc_report};
use dodeca_core::dodecomplex::{derive_presentation, CoverFile};
use dodeca_core::fpgroup::{builtin_presentation, relators_equivalent, Space};
use dodeca_core::homology::cover_homology;
use dodeca_core::hypersurface::{extract_components, specialness};
use dodeca_core::pipeline::{
    analyze, cover_record, double_cover_actions, hempel_class, phs_lattice, reproduce_table1, reproduce_table2,
    reproduce_table3, reproduce_table4, search_cores, search_towers, verify_appendix, Census, CoreSearchOptions,
    TableDataset,
};
use dodeca_core::Error;

#[derive(Parser)]
#[command(name = "dodeca", version, about = "Covers, cubulations and canonical surfaces of dodecahedral 3-manifolds")]
struct Cli {
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Allow the heavy suites (Table 3, doubles of E, degree-504 homology).
    #[arg(long, global = true)]
    slow: bool,
    /// Directory for output files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    Table1,
    Table2,
    Table3,
    Table4,
}

#[derive(Subcommand)]
enum Command {
    /// Builtin and derived presentations of the three spaces.
    Presentations,
    /// Enumerate covers up to a degree (or all PHS covers with --lattice).
    Enumerate {
        #[arg(long, default_value = "ws")]
        space: Space,
        #[arg(long, default_value_t = 9)]
        max_index: usize,
        /// One cover per subgroup class of the finite PHS group.
        #[arg(long)]
        lattice: bool,
    },
    /// Homology, cubulation, NPC, surfaces and specialness of a cover file.
    Analyze {
        file: PathBuf,
    },
    Homology {
        file: PathBuf,
    },
    Cubulate {
        file: PathBuf,
        #[arg(long)]
        npc: bool,
    },
    Surfaces {
        file: PathBuf,
    },
    Special {
        file: PathBuf,
    },
    /// Normal core of a cover; --build writes the regular cover.
    Core {
        file: PathBuf,
        #[arg(long)]
        build: bool,
    },
    DoubleCovers {
        file: PathBuf,
        #[arg(long)]
        fixed_point_free: bool,
        #[arg(long)]
        analyze: bool,
    },
    /// Recompute a published table and diff it against the bundled copy.
    Reproduce {
        table: Table,
        /// For table1: directory of cover files from `enumerate`.
        #[arg(long)]
        census: Option<PathBuf>,
    },
    VerifyAppendix,
    /// Normal cores of the covers of degree 7 to 9.
    SearchCores {
        /// Directory of cover files from `enumerate`; enumerates afresh if absent.
        #[arg(long)]
        census: Option<PathBuf>,
    },
    /// Double covers of the six-sheeted cover and their doubles.
    SearchTowers,
}

/// Result of one command: its output and whether verification passed.
struct Outcome {
    value: serde_json::Value,
    csv: Option<String>,
    passed: bool,
}

impl Outcome {
    fn ok(value: impl Serialize) -> Result<Outcome, Error> {
        Ok(Outcome { value: serde_json::to_value(value)?, csv: None, passed: true })
    }

    fn table(t: TableDataset) -> Result<Outcome, Error> {
        Ok(Outcome { passed: t.passes(), csv: Some(t.to_csv()), value: serde_json::to_value(t)? })
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit(_) => 3,
        Error::Integrity(_) | Error::Calibration(_) | Error::CorruptFixture(_) => 1,
        _ => 2,
    }
}

fn read_cover(path: &Path) -> Result<CoverFile, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    CoverFile::from_json(&text)
}

fn provenance_of(path: &Path) -> Provenance {
    Provenance::Imported(path.display().to_string())
}

fn progress(msg: &str) {
    eprintln!("[dodeca] {msg}");
}

fn write_json(dir: &Path, name: &str, v: &impl Serialize) -> Result<(), Error> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), serde_json::to_string_pretty(v)? + "\n")?;
    Ok(())
}

fn cover_json(space: Space, a: &PermutationAction, provenance: &Provenance) -> serde_json::Value {
    let mut v = serde_json::to_value(CoverFile::new(space, a.clone())).expect("cover file serializes");
    v["provenance"] = serde_json::to_value(provenance).expect("provenance serializes");
    v
}

fn need_slow(cli: &Cli, what: &str) -> Result<(), Error> {
    if cli.slow {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{what} is a heavy suite; pass --slow")))
    }
}

fn read_census(dir: &Path, jobs: usize) -> Result<Census, Error> {
    let mut covers = Vec::new();
    let mut space = None;
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    for p in paths {
        let c = read_cover(&p)?;
        if space.is_some_and(|s| s != c.space) {
            return Err(Error::InvalidInput("census mixes spaces".into()));
        }
        space = Some(c.space);
        covers.push((c.action, provenance_of(&p)));
    }
    let space = space.ok_or_else(|| Error::InvalidInput(format!("no cover files in {}", dir.display())))?;
    Census::from_covers(space, covers, jobs)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let jobs = cli.jobs;
    match &cli.command {
        Command::Presentations => {
            let v: Vec<_> = Space::ALL
                .iter()
                .map(|&s| {
                    let b = builtin_presentation(s);
                    let d = derive_presentation(s);
                    json!({
                        "space": s,
                        "builtin": b.to_string(),
                        "derived": d.to_string(),
                        "equivalent": relators_equivalent(&b, &d),
                        "abelianization": cover_homology(&b, &PermutationAction::identity(1).as_table()).to_string(),
                    })
                })
                .collect();
            let passed = v.iter().all(|p| p["equivalent"] == true);
            Ok(Outcome { value: json!(v), csv: None, passed })
        }
        Command::Enumerate { space, max_index, lattice } => {
            let covers: Vec<(PermutationAction, Provenance)> = if *lattice {
                if *space != Space::Phs {
                    return Err(Error::InvalidInput("lattice mode needs a finite group (phs)".into()));
                }
                let l = finite_subgroup_classes(&builtin_presentation(Space::Phs), 120)?;
                progress(&format!("{} subgroups in {} classes", l.subgroup_count, l.classes.len()));
                l.classes.iter().map(|c| (action_from_table(&c.table), Provenance::Lattice)).collect()
            } else {
                progress(&format!("enumerating subgroups of index <= {max_index}"));
                low_index_classes_with_jobs(&builtin_presentation(*space), *max_index, jobs.max(1))?
                    .into_iter()
                    .map(|c| (c.action(), c.provenance))
                    .collect()
            };
            let mut counts = std::collections::BTreeMap::new();
            for (i, (a, prov)) in covers.iter().enumerate() {
                *counts.entry(a.degree()).or_insert(0usize) += 1;
                if let Some(dir) = &cli.out {
                    let name = format!("{}-d{:03}-{:04}.json", space, a.degree(), i);
                    write_json(dir, &name, &cover_json(*space, a, prov))?;
                }
            }
            Outcome::ok(json!({ "space": space, "covers": covers.len(), "per_degree": counts }))
        }
        Command::Analyze { file } => {
            let c = read_cover(file)?;
            Outcome::ok(analyze(c.space, &c.action, provenance_of(file))?)
        }
        Command::Homology { file } => {
            let c = read_cover(file)?;
            let h = cover_homology(&builtin_presentation(c.space), &c.action.as_table());
            Outcome::ok(json!({ "homology": h, "betti": h.free_rank }))
        }
        Command::Cubulate { file, npc } => {
            let c = read_cover(file)?;
            let cc = cubulate(&c.complex());
            let mut v = json!({ "f_vector": cc.f_vector(), "min_edge_degree": cc.edge_degrees().into_iter().min() });
            if *npc {
                let r = npc_report(&cc);
                v["npc"] = json!(r.npc);
                v["pseudomanifold"] = json!(r.pseudomanifold);
                v["failing_links"] = serde_json::to_value(r.failing_links().collect::<Vec<_>>())?;
            }
            Outcome::ok(v)
        }
        Command::Surfaces { file } => {
            let c = read_cover(file)?;
            let comps = extract_components(&cubulate(&c.complex()));
            let v: Vec<_> = comps
                .iter()
                .map(|s| {
                    json!({
                        "id": s.id,
                        "disks": s.disks,
                        "euler_characteristic": s.euler_characteristic,
                        "genus": s.genus(),
                        "orientable": s.orientable,
                        "two_sided": s.two_sided,
                        "embedded": s.embedded,
                        "near_vertices": s.near.set.len(),
                    })
                })
                .collect();
            Outcome::ok(v)
        }
        Command::Special { file } => {
            let c = read_cover(file)?;
            Outcome::ok(specialness(&cubulate(&c.complex())))
        }
        Command::Core { file, build } => {
            let c = read_cover(file)?;
            let img = image_summary(&c.action, DEFAULT_CLOSURE_BOUND)?;
            let mut v = json!({ "degree": c.degree, "core_index": img.order, "image": img });
            if *build {
                let k = core(&c.action.to_table(0)?, DEFAULT_CLOSURE_BOUND)?;
                let cf = cover_json(c.space, &k.action(), &k.provenance);
                match &cli.out {
                    Some(dir) => write_json(dir, &format!("core-d{:06}.json", k.degree()), &cf)?,
                    None => v["cover"] = cf,
                }
            }
            Outcome::ok(v)
        }
        Command::DoubleCovers { file, fixed_point_free, analyze: full } => {
            let c = read_cover(file)?;
            let doubles: Vec<PermutationAction> = double_cover_actions(c.space, &c.action)?
                .into_iter()
                .filter(|d| !*fixed_point_free || !d.has_fixed_point())
                .collect();
            progress(&format!("{} double covers", doubles.len()));
            let mut out = Vec::new();
            for (i, d) in doubles.iter().enumerate() {
                let prov = Provenance::Imported(format!("{} double {i}", file.display()));
                let v = if *full {
                    serde_json::to_value(cover_record(c.space, d, prov)?)?
                } else {
                    cover_json(c.space, d, &prov)
                };
                if let Some(dir) = &cli.out {
                    write_json(dir, &format!("double-{i:05}.json"), &v)?;
                }
                out.push(v);
            }
            Outcome::ok(out)
        }
        Command::Reproduce { table, census } => match table {
            Table::Table1 => {
                let census = match census {
                    Some(dir) => read_census(dir, jobs)?,
                    None => {
                        progress("enumerating all covers of WS up to degree 9");
                        Census::run(Space::Ws, 9, jobs.max(1))?
                    }
                };
                Outcome::table(reproduce_table1(&census)?)
            }
            Table::Table2 => Outcome::table(reproduce_table2(&search_towers(jobs, false)?)?),
            Table::Table3 => {
                need_slow(cli, "table3")?;
                Outcome::table(reproduce_table3(&search_towers(jobs, false)?)?)
            }
            Table::Table4 => Outcome::table(reproduce_table4(&phs_lattice()?.covers)?),
        },
        Command::VerifyAppendix => {
            let classes = low_index_classes(&builtin_presentation(Space::Ws), 5)?;
            let records = classes
                .iter()
                .map(|c| cover_record(Space::Ws, &c.action(), c.provenance.clone()))
                .collect::<Result<Vec<_>, _>>()?;
            let hempel = hempel_class(&classes, &records)?;
            let v = verify_appendix(Some(&hempel.table))?;
            Ok(Outcome { passed: v.passed(), value: serde_json::to_value(&v)?, csv: None })
        }
        Command::SearchCores { census } => {
            let census = match census {
                Some(dir) => read_census(dir, jobs)?,
                None => {
                    progress("enumerating all covers of WS up to degree 9");
                    Census::run(Space::Ws, 9, jobs.max(1))?
                }
            };
            if !cli.slow {
                progress("skipping degree-504 homology (needs --slow)");
            }
            let opts = CoreSearchOptions { jobs, max_build: 2520, homology: cli.slow };
            Outcome::ok(search_cores(&census, &opts)?)
        }
        Command::SearchTowers => {
            if !cli.slow {
                progress("skipping the doubles of E (needs --slow)");
            }
            let r = search_towers(jobs, cli.slow)?;
            let passed = r.e_candidates == 1 && r.e_matches_words;
            Ok(Outcome { value: serde_json::to_value(r)?, csv: None, passed })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            let text = match (cli.format, &o.csv) {
                (Format::Csv, Some(csv)) => csv.clone(),
                _ => serde_json::to_string_pretty(&o.value).expect("json output") + "\n",
            };
            print!("{text}");
            if !o.passed {
                eprintln!("verification mismatch");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
