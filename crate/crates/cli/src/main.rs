mod load;
mod render;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use distlat::embeddings::{
    classify, classify_by_digraphs, cover_to_embedding, dilworth_decompose,
    embed_from_decomposition, enumerate_correspondence,
};
use distlat::intervals::{construct_a, construct_d, remove, rival_extract};
use distlat::lattice::{birkhoff_map, downset_lattice};
use distlat::text::{parse_product, write_intervals};
use distlat::verify::{run_suite, Suite};
use distlat::{
    ChainProduct, Classification, Digraph, Embedding, Error, IntervalFamily, Lattice, Poset,
    Sublattice,
};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Verb {
    /// Join-irreducibles of a distributive lattice, or the round trip P -> D(P) -> J
    Birkhoff,
    /// The lattice of downsets of a poset
    Downsets,
    /// The closed interval family removed from a sublattice
    Extract,
    /// The digraph D on C^inf of an interval family
    BuildD,
    /// The digraph A on C of an interval family
    BuildA,
    /// Full / subdirect / tight flags of a sublattice
    Classify,
    /// A minimum chain decomposition
    Decompose,
    /// A tight embedding into a product of chains, or the embedding of a cover
    Embed,
    /// Embeddings against loose chain covers of a poset
    Correspond,
    /// Property sweeps over exhaustive and random instances
    Verify,
    /// Graphviz DOT of a poset, lattice, digraph or interval family
    Render,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Small,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphArg {
    D,
    A,
}

/// Finite distributive lattices, products of chains and their digraph
/// representations.
#[derive(Debug, Parser)]
#[command(name = "distlat", version)]
struct Cli {
    #[arg(value_enum)]
    verb: Verb,
    /// Chain lengths, e.g. "4 5" or "4,5"
    #[arg(long)]
    product: Option<String>,
    #[arg(long, value_name = "FILE")]
    intervals: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    poset: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    sublattice: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    cover: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    lattice: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    digraph: Option<PathBuf>,
    /// Which digraph `render` draws for an interval family
    #[arg(long, value_enum, default_value = "d")]
    graph: GraphArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, value_enum, default_value = "small")]
    suite: SuiteArg,
    /// Largest instance size swept by `verify`
    #[arg(long, default_value_t = 3)]
    max: usize,
}

#[derive(Debug)]
pub enum Failure {
    Domain(String),
    Input(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Input(_) => 2,
            Failure::Verification(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Input(m) | Failure::Verification(m) => m,
        }
    }

    pub fn located(self, path: &Path) -> Failure {
        let prefix = |m: String| format!("{}: {m}", path.display());
        match self {
            Failure::Domain(m) => Failure::Domain(prefix(m)),
            Failure::Input(m) => Failure::Input(prefix(m)),
            Failure::Verification(m) => Failure::Verification(prefix(m)),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Input(e.to_string()),
            Error::Invariant(_) => Failure::Verification(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    check_flags(cli)?;
    let product = cli.product.as_deref().map(parse_product).transpose()?;
    match cli.verb {
        Verb::Birkhoff => birkhoff(cli),
        Verb::Downsets => downsets(cli),
        Verb::Extract => extract(cli, product),
        Verb::BuildD | Verb::BuildA => build(cli, product),
        Verb::Classify => classify_verb(cli, product),
        Verb::Decompose => decompose(cli),
        Verb::Embed => embed(cli, product),
        Verb::Correspond => correspond(cli, product),
        Verb::Verify => verify(cli),
        Verb::Render => render_verb(cli, product),
    }
}

/// Rejects flag combinations before any file is read.
fn check_flags(cli: &Cli) -> Result<(), Failure> {
    let given: Vec<&str> = [
        ("--product", cli.product.is_some()),
        ("--intervals", cli.intervals.is_some()),
        ("--poset", cli.poset.is_some()),
        ("--sublattice", cli.sublattice.is_some()),
        ("--cover", cli.cover.is_some()),
        ("--lattice", cli.lattice.is_some()),
        ("--digraph", cli.digraph.is_some()),
    ]
    .into_iter()
    .filter_map(|(name, set)| set.then_some(name))
    .collect();
    let (inputs, allowed): (&[&str], &[&str]) = match cli.verb {
        Verb::Birkhoff => (&["--lattice", "--poset"], &[]),
        Verb::Downsets => (&["--poset"], &[]),
        Verb::Decompose => (&["--poset", "--lattice"], &[]),
        Verb::Extract => (&["--sublattice"], &["--product"]),
        Verb::BuildD | Verb::BuildA => (&["--intervals"], &["--product"]),
        Verb::Classify => (&["--intervals", "--sublattice"], &["--product"]),
        Verb::Embed => (
            &["--lattice", "--sublattice", "--intervals", "--cover"],
            &["--product"],
        ),
        Verb::Correspond => (&["--poset"], &["--product"]),
        Verb::Verify => (&[], &[]),
        Verb::Render => (
            &[
                "--poset",
                "--lattice",
                "--digraph",
                "--intervals",
                "--sublattice",
            ],
            &["--product"],
        ),
    };
    let verb = cli.verb.to_possible_value().expect("no skipped verbs");
    let verb = verb.get_name();
    if let Some(flag) = given
        .iter()
        .find(|f| !inputs.contains(f) && !allowed.contains(f))
    {
        return Err(Failure::Input(format!("`{flag}` is not used by `{verb}`")));
    }
    let chosen = given.iter().filter(|f| inputs.contains(f)).count();
    if !inputs.is_empty() && chosen != 1 {
        return Err(Failure::Input(format!(
            "`{verb}` takes exactly one of {}",
            inputs.join(", ")
        )));
    }
    if cli.verb == Verb::Render && cli.format == Format::Json {
        return Err(Failure::Input("`render` only writes DOT".into()));
    }
    if cli.verb == Verb::Correspond && cli.product.is_none() {
        return Err(Failure::Input("`correspond` needs --product".into()));
    }
    Ok(())
}

fn emit(cli: &Cli, text: String, value: Value) -> Outcome {
    Ok(match cli.format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&value).expect("plain values") + "\n",
    })
}

fn set_text(members: impl Iterator<Item = usize>) -> String {
    let parts: Vec<String> = members.map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn tuple_text(x: &[usize]) -> String {
    let parts: Vec<String> = x.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

fn classification_json(c: &Classification) -> Value {
    json!({ "full": c.full, "subdirect": c.subdirect, "tight": c.tight })
}

fn birkhoff(cli: &Cli) -> Outcome {
    if let Some(path) = &cli.poset {
        let p = load::poset(path)?;
        let d = downset_lattice(&p)?;
        let j = d.lattice.join_irreducibles();
        if j.carrier.isomorphism(&p).is_none() {
            return Err(Failure::Verification(
                "J(D(P)) is not isomorphic to P".into(),
            ));
        }
        let text = format!(
            "poset {} vertices\ndownsets {}\nirreducibles {} (isomorphic to the poset)\n",
            p.len(),
            d.len(),
            j.len()
        );
        let value = json!({ "poset": p.len(), "downsets": d.len(), "irreducibles": j.len(), "round_trip": true });
        return emit(cli, text, value);
    }
    let l = load::lattice(cli.lattice.as_deref().expect("checked"))?;
    let map = birkhoff_map(&l)?;
    let j = &map.irreducibles;
    let mut text = format!("irreducibles {}\n", set_text(j.label.iter().copied()));
    for (upper, lower) in j.carrier.covers() {
        writeln!(text, "{} > {}", j.label[upper], j.label[lower]).unwrap();
    }
    let mut elements = Vec::new();
    for x in 0..l.len() {
        let below: Vec<usize> = map.set_of(x).iter().map(|k| j.label[k]).collect();
        writeln!(text, "{x} = {}", set_text(below.iter().copied())).unwrap();
        elements.push(below);
    }
    let covers: Vec<[usize; 2]> = j
        .carrier
        .covers()
        .into_iter()
        .map(|(u, v)| [j.label[u], j.label[v]])
        .collect();
    let value = json!({ "irreducibles": j.label, "covers": covers, "elements": elements });
    emit(cli, text, value)
}

fn downsets(cli: &Cli) -> Outcome {
    let p = load::poset(cli.poset.as_deref().expect("checked"))?;
    let d = downset_lattice(&p)?;
    let mut text = format!("downsets {}\n", d.len());
    for (k, s) in d.labels.iter().enumerate() {
        writeln!(text, "{k} = {}", set_text(s.iter())).unwrap();
    }
    let covers = d.lattice.covers();
    for &(upper, lower) in &covers {
        writeln!(text, "{upper} > {lower}").unwrap();
    }
    let sets: Vec<Vec<usize>> = d.labels.iter().map(|s| s.to_vec()).collect();
    let value = json!({ "elements": sets, "covers": covers });
    emit(cli, text, value)
}

fn extract(cli: &Cli, product: Option<ChainProduct>) -> Outcome {
    let l = load::sublattice(cli.sublattice.as_deref().expect("checked"), product)?;
    let fam = rival_extract(&l);
    emit(cli, write_intervals(&fam), family_json(&fam))
}

fn family_json(fam: &IntervalFamily) -> Value {
    let ivs: Vec<[usize; 4]> = fam
        .non_mandatory()
        .map(|iv| [iv.i, iv.j, iv.alpha, iv.beta])
        .collect();
    json!({ "product": fam.product().sizes(), "intervals": ivs })
}

fn arc_listing(cli: &Cli, g: &Digraph, names: &[String]) -> Outcome {
    let arcs: Vec<(usize, usize)> = g.arcs().filter(|&(u, v)| u != v).collect();
    let mut text = String::new();
    for &(u, v) in &arcs {
        writeln!(text, "{} -> {}", names[u], names[v]).unwrap();
    }
    let pairs: Vec<[&str; 2]> = arcs
        .iter()
        .map(|&(u, v)| [&*names[u], &*names[v]])
        .collect();
    emit(cli, text, json!({ "vertices": names, "arcs": pairs }))
}

fn build(cli: &Cli, product: Option<ChainProduct>) -> Outcome {
    let fam = load::intervals(cli.intervals.as_deref().expect("checked"), product)?;
    let p = fam.product();
    if cli.verb == Verb::BuildD {
        let names: Vec<String> = (0..p.inf_count()).map(|v| p.inf_name(v)).collect();
        arc_listing(cli, &construct_d(&fam), &names)
    } else {
        let names: Vec<String> = (0..p.c_count()).map(|v| p.c_name(v)).collect();
        arc_listing(cli, &construct_a(&fam), &names)
    }
}

fn sublattice_input(cli: &Cli, product: Option<ChainProduct>) -> Result<Sublattice, Failure> {
    if let Some(path) = &cli.intervals {
        Ok(remove(&load::intervals(path, product)?)?)
    } else {
        load::sublattice(cli.sublattice.as_deref().expect("checked"), product)
    }
}

fn classify_verb(cli: &Cli, product: Option<ChainProduct>) -> Outcome {
    let l = sublattice_input(cli, product)?;
    let c = classify(&l)?;
    let (_, [irreflexive, strongly_acyclic]) = classify_by_digraphs(&l);
    let text = format!("{c}\n");
    let mut value = classification_json(&c);
    value["elements"] = json!(l.len());
    value["a_irreflexive"] = json!(irreflexive);
    value["a_strongly_acyclic"] = json!(strongly_acyclic);
    emit(cli, text, value)
}

fn decompose(cli: &Cli) -> Outcome {
    let (p, labels): (Poset, Vec<usize>) = if let Some(path) = &cli.poset {
        let p = load::poset(path)?;
        let n = p.len();
        (p, (0..n).collect())
    } else {
        let l = load::lattice(cli.lattice.as_deref().expect("checked"))?;
        if !l.is_distributive() {
            return Err(Error::NotDistributive.into());
        }
        let j = l.join_irreducibles();
        (j.carrier, j.label)
    };
    let chains: Vec<Vec<usize>> = dilworth_decompose(&p)
        .into_iter()
        .map(|c| c.into_iter().map(|v| labels[v]).collect())
        .collect();
    let mut text = format!("width {}\n", chains.len());
    for c in &chains {
        let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        writeln!(text, "chain {}", parts.join(" ")).unwrap();
    }
    emit(
        cli,
        text,
        json!({ "width": chains.len(), "chains": chains }),
    )
}

fn embed(cli: &Cli, product: Option<ChainProduct>) -> Outcome {
    let (e, names): (Embedding, Vec<String>) = if let Some(path) = &cli.cover {
        let cover = load::cover(path)?;
        let e = cover_to_embedding(&cover)?;
        let d = downset_lattice(cover.poset())?;
        let names = d.labels.iter().map(|s| set_text(s.iter())).collect();
        (e, names)
    } else {
        let (l, names): (Lattice, Vec<String>) = if let Some(path) = &cli.lattice {
            let l = load::lattice(path)?;
            let names = (0..l.len()).map(|x| x.to_string()).collect();
            (l, names)
        } else {
            let s = sublattice_input(cli, product)?.lattice();
            let names = s.labels.iter().map(|x| tuple_text(x)).collect();
            (s.lattice, names)
        };
        if l.len() == 1 {
            return Err(Failure::Domain(
                "a one-element lattice has no irreducibles to embed".into(),
            ));
        }
        if !l.is_distributive() {
            return Err(Error::NotDistributive.into());
        }
        let j = l.join_irreducibles();
        let e = embed_from_decomposition(&l, &dilworth_decompose(&j.carrier))?;
        (e, names)
    };
    let c = e.classify()?;
    let mut text = format!("product {}\n{c}\n", e.target());
    let mut image = Vec::new();
    for (name, x) in names.iter().zip(e.image()) {
        writeln!(text, "{name} -> {}", tuple_text(x)).unwrap();
        image.push(json!({ "element": name, "point": x }));
    }
    let value = json!({
        "product": e.target().sizes(),
        "classification": classification_json(&c),
        "image": image,
    });
    emit(cli, text, value)
}

fn correspond(cli: &Cli, product: Option<ChainProduct>) -> Outcome {
    let p = load::poset(cli.poset.as_deref().expect("checked"))?;
    let target = product.expect("checked");
    let r = enumerate_correspondence(&p, &target)?;
    let rows = [
        ("embeddings", r.embeddings, "homomorphisms", r.homomorphisms),
        ("full", r.full, "loose covers", r.loose_covers),
        ("subdirect", r.subdirect, "chain covers", r.chain_covers),
        ("tight", r.tight, "decompositions", r.decompositions),
        (
            "decompositions",
            r.decompositions,
            "counted directly",
            r.counted_decompositions,
        ),
    ];
    let mut text = format!("poset {} vertices, product {target}\n", p.len());
    for (a, x, b, y) in rows {
        writeln!(text, "{a} {x} = {b} {y}").unwrap();
    }
    if rows.iter().any(|&(_, x, _, y)| x != y) {
        return Err(Failure::Verification(format!("counts disagree\n{text}")));
    }
    let value = json!({
        "embeddings": r.embeddings,
        "homomorphisms": r.homomorphisms,
        "full": r.full,
        "subdirect": r.subdirect,
        "tight": r.tight,
        "loose_covers": r.loose_covers,
        "chain_covers": r.chain_covers,
        "decompositions": r.decompositions,
    });
    emit(cli, text, value)
}

fn verify(cli: &Cli) -> Outcome {
    let suite = match cli.suite {
        SuiteArg::Small => Suite::Small,
        SuiteArg::All => Suite::All,
    };
    let report = run_suite(suite, cli.max)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for prop in &report.properties {
        let status = if prop.passed() { "PASS" } else { "FAIL" };
        writeln!(text, "{status} {} {}", prop.name, prop.checked).unwrap();
        for f in prop.failures.iter().take(3) {
            writeln!(text, "  {f}").unwrap();
        }
        rows.push(json!({ "name": prop.name, "checked": prop.checked, "failures": prop.failures }));
    }
    let out = emit(
        cli,
        text,
        json!({ "passed": report.passed(), "properties": rows }),
    )?;
    if report.passed() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Verification("some properties failed".into()))
    }
}

fn render_verb(cli: &Cli, product: Option<ChainProduct>) -> Outcome {
    let (name, g, labels): (&str, Digraph, Vec<String>) = if let Some(path) = &cli.poset {
        let p = load::poset(path)?;
        let labels = (0..p.len()).map(|v| v.to_string()).collect();
        ("poset", p.graph().clone(), labels)
    } else if let Some(path) = &cli.lattice {
        let l = load::lattice(path)?;
        let labels = (0..l.len()).map(|v| v.to_string()).collect();
        ("lattice", l.order().graph().clone(), labels)
    } else if let Some(path) = &cli.digraph {
        let g = load::digraph(path)?;
        let labels = (0..g.vertex_count()).map(|v| v.to_string()).collect();
        ("digraph", g, labels)
    } else if let Some(path) = &cli.intervals {
        let fam = load::intervals(path, product)?;
        let p = fam.product();
        match cli.graph {
            GraphArg::D => (
                "D",
                construct_d(&fam),
                (0..p.inf_count()).map(|v| p.inf_name(v)).collect(),
            ),
            GraphArg::A => (
                "A",
                construct_a(&fam),
                (0..p.c_count()).map(|v| p.c_name(v)).collect(),
            ),
        }
    } else {
        let s = load::sublattice(cli.sublattice.as_deref().expect("checked"), product)?.lattice();
        let labels = s.labels.iter().map(|x| tuple_text(x)).collect();
        ("sublattice", s.lattice.order().graph().clone(), labels)
    };
    Ok(render::dot(name, &g, &labels))
}
