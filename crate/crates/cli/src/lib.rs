//! Command-line front end: text formats in, line-oriented reports out.
//!
//! Exit statuses: 0 success, 1 refusal (a budget would be exceeded), 2 input
//! error, 3 invariant or contract violation.

mod dot;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use ramsey_trees::coding_tree::{
    audit_extensions, build_s, check_a3_prefix, skew, FSequence, ShortLex, StepKind,
};
use ramsey_trees::envelope::{minimal_envelopes, unique_copy};
use ramsey_trees::graph::{
    graph_from_nodes, sauer_degree_bound, sauer_type_count, triangle_witness,
};
use ramsey_trees::ramsey_lab::{
    arrow_check, devlin_type_count, hl_solve, laver_type_count, level_product_domain,
    persistence_check, Coloring, Key, LaverNotion, DEVLIN_BOUND,
};
use ramsey_trees::similarity::{enumerate_diagonal_types, Mode};
use ramsey_trees::tree::enumerate_strong_subtrees;
use ramsey_trees::{canonical_type, meet_closure, Error, FinTree, Graph, Node, SimilarityType};

pub use dot::{emit_dot, DotOptions};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("refused: {0}")]
    Refusal(String),
    #[error("violation: {0}")]
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Refusal(_) => 1,
            CliError::Input(_) => 2,
            CliError::Violation(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => CliError::Refusal(e.to_string()),
            Error::Parse(_) => CliError::Input(e.to_string()),
            _ => CliError::Violation(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

const DEFAULT_BUDGET: u128 = 1 << 24;
/// Graphs with more vertices are refused by `code`.
const MAX_CODE_VERTICES: usize = 4;

#[derive(Parser, Debug)]
#[command(
    name = "ramsey-lab",
    version,
    about = "Finite Ramsey experiments on binary trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Strong subtrees of full binary trees.
    Trees {
        #[command(subcommand)]
        command: TreesCommand,
    },
    /// Similarity type censuses.
    Types {
        #[command(subcommand)]
        command: TypesCommand,
    },
    /// Decode coding nodes, or count the diagonal codings of a graph.
    Code {
        #[arg(long, conflicts_with = "nodes")]
        graph: Option<PathBuf>,
        /// Comma-separated coding nodes of increasing length.
        #[arg(long, required_unless_present = "graph")]
        nodes: Option<String>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Minimal strong envelopes of a strongly diagonal tree.
    Envelopes {
        #[arg(long)]
        tree: PathBuf,
        /// Depth of the ambient full tree.
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// The triangle-free coding tree.
    CodingTree {
        #[command(subcommand)]
        command: CodingTreeCommand,
    },
    /// Monochromatic strong subtrees on level products.
    Hl {
        #[command(subcommand)]
        command: HlCommand,
    },
    /// Decide n → (k)^d_σ exhaustively.
    Arrow {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        colors: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Whether a with-passing type has a copy inside a tree.
    PersistCheck {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, conflicts_with = "depth")]
        tree: Option<PathBuf>,
        /// Use the full tree of this depth.
        #[arg(long, required_unless_present = "tree")]
        depth: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum TreesCommand {
    Enumerate {
        #[arg(long)]
        depth: usize,
        /// Number of levels of each subtree.
        #[arg(long)]
        levels: usize,
        /// Draw the ambient tree with the subtree of this index darkened.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        select: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    WithPassing,
    OrderOnly,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::WithPassing => Mode::WithPassing,
            ModeArg::OrderOnly => Mode::OrderOnly,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NotionArg {
    Trivial,
    RelativeLength,
    LengthWithPassing,
    MeetInterleaving,
}

impl From<NotionArg> for LaverNotion {
    fn from(n: NotionArg) -> LaverNotion {
        match n {
            NotionArg::Trivial => LaverNotion::Trivial,
            NotionArg::RelativeLength => LaverNotion::RelativeLength,
            NotionArg::LengthWithPassing => LaverNotion::LengthWithPassing,
            NotionArg::MeetInterleaving => LaverNotion::MeetInterleaving,
        }
    }
}

#[derive(Subcommand, Debug)]
enum TypesCommand {
    Count {
        /// Order-only diagonal types with this many terminal nodes.
        #[arg(long, conflicts_with_all = ["laver", "terminals"])]
        devlin: Option<usize>,
        /// Classes of tuples across this many copies of the binary tree.
        #[arg(long, conflicts_with = "terminals")]
        laver: Option<usize>,
        #[arg(long, value_enum, default_value = "relative-length")]
        notion: NotionArg,
        /// Diagonal types with this many terminal nodes.
        #[arg(long, required_unless_present_any = ["devlin", "laver"])]
        terminals: Option<usize>,
        #[arg(long, value_enum, default_value = "with-passing")]
        mode: ModeArg,
        /// Also print every type.
        #[arg(long)]
        list: bool,
        /// Largest terminal count accepted.
        #[arg(long, default_value_t = DEVLIN_BOUND)]
        bound: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CodingTreeCommand {
    Build {
        /// Even number of coding nodes.
        #[arg(long)]
        coding_nodes: usize,
        /// Also write the tree file here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Emit the skewed tree with one critical node per level.
        #[arg(long)]
        skew: bool,
    },
}

#[derive(Subcommand, Debug)]
enum HlCommand {
    Solve {
        /// Tree files; repeat for several trees.
        #[arg(long)]
        tree: Vec<PathBuf>,
        /// Without --tree, use copies of the full tree of this depth.
        #[arg(long, required_unless_present = "tree")]
        depth: Option<usize>,
        #[arg(long, default_value_t = 1)]
        trees: usize,
        /// Number of levels the witness must have.
        #[arg(long)]
        levels: usize,
        /// A coloring file or `seed:N`.
        #[arg(long)]
        coloring: String,
        /// Palette size for seeded colorings.
        #[arg(long, default_value_t = 2)]
        colors: usize,
    },
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn input_context(path: &Path) -> impl Fn(Error) -> CliError + '_ {
    move |e| CliError::Input(format!("{}: {e}", path.display()))
}

/// Reads and validates a tree file.
pub fn load_tree(path: &Path) -> CliResult<FinTree> {
    FinTree::from_text(&read(path)?).map_err(input_context(path))
}

/// Reads and validates a graph file.
pub fn load_graph(path: &Path) -> CliResult<Graph> {
    Graph::from_text(&read(path)?).map_err(input_context(path))
}

/// A coloring file, or `seed:N` for a seeded coloring of `domain`. File
/// colorings must be total on `domain`.
pub fn load_coloring(spec: &str, domain: &[Key], colors: usize) -> CliResult<Coloring> {
    if let Some(seed) = spec.strip_prefix("seed:") {
        let seed: u64 = seed
            .parse()
            .map_err(|_| CliError::Input(format!("bad seed {seed:?}")))?;
        return Coloring::seeded(domain.iter().cloned(), colors, seed)
            .map_err(|e| CliError::Input(e.to_string()));
    }
    let path = Path::new(spec);
    let c = Coloring::from_text(&read(path)?).map_err(input_context(path))?;
    c.check_total(domain).map_err(input_context(path))?;
    Ok(c)
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
fn write_atomic(path: &Path, text: &str) -> CliResult<()> {
    let io = |e: std::io::Error| CliError::Input(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn join_nodes<'a, I: IntoIterator<Item = &'a Node>>(xs: I) -> String {
    xs.into_iter()
        .map(Node::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn join_nums(xs: &[usize]) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn edge_list(g: &Graph) -> String {
    let es: Vec<String> = g.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
    if es.is_empty() {
        "none".into()
    } else {
        es.join(" ")
    }
}

fn parse_nodes(list: &str) -> CliResult<Vec<Node>> {
    list.split(',')
        .map(|s| {
            s.parse::<Node>()
                .map_err(|e| CliError::Input(e.to_string()))
        })
        .collect()
}

fn trees_enumerate(
    depth: usize,
    levels: usize,
    dot: Option<&Path>,
    select: usize,
) -> CliResult<String> {
    if depth > 4 {
        return Err(CliError::Refusal(format!(
            "depth {depth} exceeds the enumeration limit 4"
        )));
    }
    let trees = enumerate_strong_subtrees(depth, levels);
    let mut out = format!("depth {depth}\nlevels {levels}\ncount {}\n", trees.len());
    for t in &trees {
        let _ = writeln!(
            out,
            "tree levels={} nodes={}",
            join_nums(&t.levels()),
            join_nodes(t.nodes())
        );
    }
    if let Some(path) = dot {
        let chosen = trees
            .get(select)
            .ok_or_else(|| CliError::Input(format!("no subtree with index {select}")))?;
        let opts = DotOptions {
            selected: chosen.nodes().clone(),
            labels: false,
        };
        write_atomic(path, &emit_dot(&FinTree::full(depth), &opts))?;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn types_count(
    devlin: Option<usize>,
    laver: Option<usize>,
    notion: NotionArg,
    terminals: Option<usize>,
    mode: ModeArg,
    list: bool,
    bound: usize,
) -> CliResult<String> {
    if let Some(d) = devlin {
        return Ok(format!("{}\n", devlin_type_count(d, bound)?));
    }
    if let Some(d) = laver {
        let c = laver_type_count(d, notion.into())?;
        return Ok(format!(
            "count {}\nfactorial_bound {}\n",
            c.count, c.factorial_bound
        ));
    }
    let m = terminals.expect("clap requires one of the census flags");
    if m > bound {
        return Err(Error::BudgetExceeded {
            needed: m as u128,
            budget: bound as u128,
        }
        .into());
    }
    let types = enumerate_diagonal_types(m, mode.into(), |_| true);
    let mut out = format!("count {}\n", types.len());
    if list {
        for t in &types {
            let _ = writeln!(out, "type {t}");
        }
    }
    Ok(out)
}

fn code(graph: Option<&Path>, nodes: Option<&str>, dot: Option<&Path>) -> CliResult<String> {
    let mut out = String::new();
    let mut drawing = None;
    if let Some(list) = nodes {
        let ts = parse_nodes(list)?;
        let g = graph_from_nodes(&ts).map_err(|e| CliError::Input(e.to_string()))?;
        out.push_str(&g.to_text());
        let tri = triangle_witness(&ts)?;
        match tri {
            None => out.push_str("triangle none\n"),
            Some((i, j, k)) => {
                let _ = writeln!(out, "triangle {i} {j} {k}");
            }
        }
        drawing = Some(meet_closure(ts.iter().cloned()).with_coding(ts)?);
    }
    if let Some(path) = graph {
        let g = load_graph(path)?;
        let n = g.vertex_count();
        if n > MAX_CODE_VERTICES {
            return Err(CliError::Refusal(format!(
                "{n} vertices exceed the enumeration limit {MAX_CODE_VERTICES}"
            )));
        }
        let (count, types) = sauer_type_count(&g);
        let (bound, _) = sauer_degree_bound(&g);
        let _ = writeln!(
            out,
            "vertices {n}\nedges {}\ntypes {count}\ndegree_bound {bound}",
            edge_list(&g)
        );
        for t in &types {
            let _ = writeln!(
                out,
                "type {t} terminals={}",
                join_nodes(&t.witness_terminals())
            );
        }
        if let Some(t) = types.first() {
            drawing = Some(t.witness().with_coding(t.witness_terminals())?);
        }
    }
    if let Some(path) = dot {
        write_atomic(
            path,
            &emit_dot(
                &drawing.unwrap_or_else(FinTree::empty),
                &DotOptions::default(),
            ),
        )?;
    }
    Ok(out)
}

fn envelopes(tree: &Path, depth: usize, dot: Option<&Path>) -> CliResult<String> {
    let d = load_tree(tree)?;
    let ty = canonical_type(&d, Mode::WithPassing)?;
    let envs = minimal_envelopes(&d, depth)?;
    let mut out = format!("type {ty}\ncount {}\n", envs.len());
    for e in &envs {
        let copy = unique_copy(&ty, e)?;
        if copy != d {
            return Err(CliError::Violation(format!(
                "the unique copy in envelope {} is {}, not the input tree",
                join_nodes(e.nodes()),
                join_nodes(copy.nodes())
            )));
        }
        let _ = writeln!(
            out,
            "envelope levels={} nodes={} unique_copy=ok",
            join_nums(&e.levels()),
            join_nodes(e.nodes())
        );
    }
    if let Some(path) = dot {
        let drawing = match envs.first() {
            Some(e) => emit_dot(
                e,
                &DotOptions {
                    selected: d.nodes().clone(),
                    labels: true,
                },
            ),
            None => emit_dot(&FinTree::empty(), &DotOptions::default()),
        };
        write_atomic(path, &drawing)?;
    }
    Ok(out)
}

fn coding_tree_build(
    n: usize,
    out_path: Option<&Path>,
    dot: Option<&Path>,
    skewed: bool,
) -> CliResult<String> {
    if n == 0 || n % 2 == 1 {
        return Err(CliError::Input(format!(
            "--coding-nodes must be a positive even number, got {n}"
        )));
    }
    if n > 24 {
        return Err(CliError::Refusal(format!(
            "{n} coding nodes exceed the construction limit 24"
        )));
    }
    let m = n / 2;
    let fs = FSequence::default_prefix(m);
    let ct = build_s(m, &fs, &ShortLex)?;
    let g = ct.graph();
    if !g.is_triangle_free() {
        return Err(CliError::Violation("decoded graph has a triangle".into()));
    }
    audit_extensions(&ct).map_err(CliError::Violation)?;
    let report = check_a3_prefix(&ct, &fs, m)?;
    if report.has_violation() {
        return Err(CliError::Violation(format!(
            "density check failed: {:?}",
            report.statuses
        )));
    }
    let tree = if skewed {
        skew(&ct.tree)?
    } else {
        ct.tree.clone()
    };
    let mut out = format!("# coding nodes {n}\n");
    for s in &ct.steps {
        let kind = match s.kind {
            StepKind::Root => "root",
            StepKind::Odd => "odd",
            StepKind::Even => "even",
        };
        let _ = writeln!(
            out,
            "# step {} {kind}{}",
            s.index,
            if s.fallback { " fallback" } else { "" }
        );
    }
    let _ = writeln!(
        out,
        "# edges {}\n# triangle_free true\n# extension_audit ok",
        edge_list(&g)
    );
    out.push_str(&tree.to_text());
    if let Some(path) = out_path {
        write_atomic(path, &out)?;
    }
    if let Some(path) = dot {
        write_atomic(path, &emit_dot(&tree, &DotOptions::default()))?;
    }
    Ok(out)
}

fn hl(
    tree_paths: &[PathBuf],
    depth: Option<usize>,
    count: usize,
    levels: usize,
    coloring: &str,
    colors: usize,
) -> CliResult<String> {
    let trees: Vec<FinTree> = if tree_paths.is_empty() {
        let depth = depth.expect("clap requires --depth without --tree");
        if count == 0 {
            return Err(CliError::Input("--trees must be positive".into()));
        }
        vec![FinTree::full(depth); count]
    } else {
        tree_paths
            .iter()
            .map(|p| load_tree(p))
            .collect::<CliResult<_>>()?
    };
    let domain = level_product_domain(&trees).map_err(|e| CliError::Input(e.to_string()))?;
    let c = load_coloring(coloring, &domain, colors)?;
    let mut out = match c.seed() {
        Some(s) => format!("coloring seed {s} colors {}\n", c.colors()),
        None => format!("coloring file colors {}\n", c.colors()),
    };
    match hl_solve(&trees, &c, levels).map_err(|e| CliError::Input(e.to_string()))? {
        None => out.push_str("absent\n"),
        Some(w) => {
            let _ = writeln!(out, "levels {}\ncolor {}", join_nums(&w.levels), w.color);
            for (i, s) in w.subtrees.iter().enumerate() {
                let _ = writeln!(out, "subtree {i} nodes={}", join_nodes(s.nodes()));
            }
        }
    }
    Ok(out)
}

fn arrow(n: usize, k: usize, d: usize, colors: usize, budget: u128) -> CliResult<String> {
    let v = arrow_check(n, k, d, colors, budget).map_err(|e| match e {
        Error::Invariant(m) => CliError::Input(m),
        e => e.into(),
    })?;
    let mut out = format!("{}\n", v.holds);
    if let Some(c) = v.counterexample {
        for (key, col) in c.entries() {
            let _ = writeln!(out, "counterexample {key} {col}");
        }
    }
    Ok(out)
}

fn persist_check(ty: &str, tree: Option<&Path>, depth: Option<usize>) -> CliResult<String> {
    let ty: SimilarityType = ty
        .parse()
        .map_err(|e: Error| CliError::Input(e.to_string()))?;
    let host = match tree {
        Some(p) => load_tree(p)?,
        None => FinTree::full(depth.expect("clap requires --depth without --tree")),
    };
    Ok(format!("{}\n", persistence_check(&ty, &host)))
}

fn execute(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Trees {
            command:
                TreesCommand::Enumerate {
                    depth,
                    levels,
                    dot,
                    select,
                },
        } => trees_enumerate(depth, levels, dot.as_deref(), select),
        Command::Types {
            command:
                TypesCommand::Count {
                    devlin,
                    laver,
                    notion,
                    terminals,
                    mode,
                    list,
                    bound,
                },
        } => types_count(devlin, laver, notion, terminals, mode, list, bound),
        Command::Code { graph, nodes, dot } => {
            code(graph.as_deref(), nodes.as_deref(), dot.as_deref())
        }
        Command::Envelopes { tree, depth, dot } => envelopes(&tree, depth, dot.as_deref()),
        Command::CodingTree {
            command:
                CodingTreeCommand::Build {
                    coding_nodes,
                    out,
                    dot,
                    skew,
                },
        } => coding_tree_build(coding_nodes, out.as_deref(), dot.as_deref(), skew),
        Command::Hl {
            command:
                HlCommand::Solve {
                    tree,
                    depth,
                    trees,
                    levels,
                    coloring,
                    colors,
                },
        } => hl(&tree, depth, trees, levels, &coloring, colors),
        Command::Arrow {
            n,
            k,
            d,
            colors,
            budget,
        } => arrow(n, k, d, colors, budget),
        Command::PersistCheck { ty, tree, depth } => persist_check(&ty, tree.as_deref(), depth),
    }
}

/// Parses `argv` (program name first), runs the command and writes its
/// report. Returns the exit status.
pub fn dispatch<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli) {
        Ok(report) => match stdout.write_all(report.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "input error: {e}");
                2
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("ramsey-lab").chain(args.iter().copied());
        let code = dispatch(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn arrow_reports() {
        assert_eq!(
            run(&["arrow", "--n", "6", "--k", "3", "--d", "2", "--colors", "2"]),
            (0, "true\n".into(), String::new())
        );
        let (code, out, _) = run(&["arrow", "--n", "5", "--k", "3", "--d", "2", "--colors", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("false\ncounterexample {0,1} "));
        assert_eq!(
            run(&["arrow", "--n", "6", "--k", "3", "--d", "2", "--colors", "2", "--budget", "10"])
                .0,
            1
        );
        assert_eq!(
            run(&["arrow", "--n", "6", "--k", "3", "--d", "2", "--colors", "0"]).0,
            2
        );
    }

    #[test]
    fn devlin_counts() {
        for (d, want) in [("1", "1\n"), ("2", "2\n"), ("3", "16\n")] {
            assert_eq!(run(&["types", "count", "--devlin", d]).1, want);
        }
        assert_eq!(run(&["types", "count", "--devlin", "9"]).0, 1);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(&["frobnicate"]).0, 2);
        assert_eq!(run(&["coding-tree", "build", "--coding-nodes", "3"]).0, 2);
        assert_eq!(run(&["--help"]).0, 0);
    }

    #[test]
    fn seeded_coloring_loads() {
        let dom = level_product_domain(&[FinTree::full(1)]).unwrap();
        let c = load_coloring("seed:5", &dom, 2).unwrap();
        assert_eq!(c.seed(), Some(5));
        assert!(matches!(
            load_coloring("seed:x", &dom, 2),
            Err(CliError::Input(_))
        ));
    }
}
