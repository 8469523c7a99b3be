use std::fs;

use serde_json::{json, Value};

use super::{ChainCommand, CliError, Command, ContactArgs, CrArgs, ExportArgs, ProlongArgs, RealizeArgs, Subspaces, SymmetryArgs, ZeroMode};
use crate::chains::{CRAlgebra, ContactFiltration, ContactPair, ContactTriple};
use crate::exact::{Matrix, Scalar, Subspace, Vector};
use crate::formal::{realization_kernel, truncated_symmetries, Distribution, FpCheck, StarRealization};
use crate::graded::{
    associated_graded, complex_structure, degree_zero_action, finiteness_check, tanaka_prolong, DegreeZero,
    GradedLieAlgebra,
};
use crate::lie::{presets, LieAlgebra, Manifest, SubspaceFile};

type Res = Result<Value, CliError>;

pub(super) fn dispatch(cmd: &Command) -> Res {
    match cmd {
        Command::Validate(a) => validate(&a.algebra),
        Command::Chain(ChainCommand::Contact(args)) => chain_contact(args),
        Command::Chain(ChainCommand::Cr(args)) => chain_cr(args),
        Command::Classify(args) => classify(args),
        Command::Grade(args) => grade(args),
        Command::Prolong(args) => prolong(args),
        Command::Realize(args) => realize(args),
        Command::Symmetries(args) => symmetries(args),
        Command::Export(args) => export(args),
    }
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::new("Io", format!("{path}: {e}")))
}

/// Structure constants from a manifest file or a preset, checked for Jacobi.
fn load_algebra(spec: &str) -> Result<LieAlgebra, CliError> {
    let a = match spec.strip_prefix("preset:") {
        Some(name) => presets::preset(name)?,
        None => Manifest::from_json(&read(spec)?)?.to_algebra()?,
    };
    a.validate()?;
    Ok(a)
}

/// Named subspaces shipped with a preset.
fn canonical_subspaces(algebra: &str) -> Vec<(&'static str, Subspace)> {
    let Some(name) = algebra.strip_prefix("preset:") else {
        return Vec::new();
    };
    if name == "su15" {
        let f = presets::su15();
        return vec![("q", f.q), ("q_prime", f.q_prime)];
    }
    if let Some(n) = name.strip_prefix("heisenberg:").and_then(|n| n.parse::<usize>().ok()) {
        if n == 0 {
            return Vec::new();
        }
        let dim = 2 * n + 1;
        let sphere: Vec<Vector> = (0..n)
            .map(|k| {
                let mut v = vec![Scalar::zero(); dim];
                v[k] = Scalar::one();
                v[n + k] = -Scalar::i();
                v
            })
            .collect();
        return vec![
            ("q_sphere", Subspace::span_of(dim, &sphere)),
            ("l0", Subspace::coordinate(dim, 0..2 * n)),
        ];
    }
    Vec::new()
}

/// A subspace file, or `preset:NAME` for a subspace shipped with the algebra's preset.
fn load_subspace(spec: &str, algebra: &str, ambient: usize) -> Result<Subspace, CliError> {
    if let Some(name) = spec.strip_prefix("preset:") {
        return canonical_subspaces(algebra)
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, s)| s)
            .ok_or_else(|| CliError::new("UnknownSubspace", format!("{algebra} has no subspace {name:?}")));
    }
    Ok(SubspaceFile::from_json(&read(spec)?)?.to_subspace(ambient)?)
}

fn optional(spec: &Option<String>, algebra: &str, ambient: usize) -> Result<Option<Subspace>, CliError> {
    spec.as_deref().map(|s| load_subspace(s, algebra, ambient)).transpose()
}

fn matrix_rows(m: &Matrix) -> Value {
    json!(m.row_vectors())
}

fn validate(spec: &str) -> Res {
    let a = load_algebra(spec)?;
    Ok(json!({ "name": a.name(), "field": a.field(), "dim": a.dim(), "basis": a.labels(), "valid": true }))
}

fn filtration_json(f: &ContactFiltration, a: &LieAlgebra) -> Value {
    let terms: Vec<Value> = f.terms().iter().map(|(h, s)| json!({ "index": h, "dim": s.dim() })).collect();
    json!({
        "depth": f.depth(),
        "stabilized_at": f.stabilized_at(),
        "terms": terms,
        "c0": f.c0().basis(),
        "filtration_law": f.satisfies_filtration_law(a),
    })
}

fn chain_contact(args: &ContactArgs) -> Res {
    let a = load_algebra(&args.algebra)?;
    let l = load_subspace(&args.l, &args.algebra, a.dim())?;
    let h = optional(&args.h, &args.algebra, a.dim())?;
    let pair = ContactPair::new(a.clone(), l.clone())?;
    let f = pair.filtration()?;
    let mut out = filtration_json(&f, &a);
    out["largest_ideal_in_l0"] = json!(a.largest_ideal_in(&l).basis());
    if let Some(h) = h {
        let t = ContactTriple::new(pair, h)?;
        out["triple"] = json!({
            "strict": t.is_strict(),
            "nondegenerate": t.is_nondegenerate_by_ideals(),
            "degeneracy_order": t.degeneracy_order(),
        });
    }
    Ok(out)
}

fn load_cr(args: &CrArgs) -> Result<CRAlgebra, CliError> {
    let a = load_algebra(&args.algebra)?;
    let q = load_subspace(&args.q, &args.algebra, a.dim())?;
    Ok(CRAlgebra::new(&a, q)?)
}

fn chain_cr(args: &CrArgs) -> Res {
    let c = load_cr(args)?;
    let chain = c.chains();
    let dims = |v: &[Subspace]| v.iter().map(Subspace::dim).collect::<Vec<_>>();
    Ok(json!({
        "nu": chain.nu,
        "qbar_dims": dims(&chain.qbar),
        "qtilde_dims": dims(&chain.qtilde),
        "q_dim": c.q().dim(),
        "hull_dim": chain.hull.dim(),
        "hull": chain.hull.basis(),
        "weak": chain.hull == *c.q(),
    }))
}

fn classify(args: &CrArgs) -> Res {
    let c = load_cr(args)?;
    Ok(serde_json::to_value(c.classify()?).expect("serializable"))
}

/// The graded algebra selected by the subspace flags, with `J` when `q` is given.
///
/// Without flags a nilpotent algebra is graded from a complement of its derived
/// algebra, and an abelian one sits entirely in degree −1.
fn graded_input(s: &Subspaces) -> Result<(GradedLieAlgebra, Option<Matrix>), CliError> {
    let a = load_algebra(&s.algebra)?;
    let n = a.dim();
    if let Some(q) = &s.q {
        let q = load_subspace(q, &s.algebra, n)?;
        let c = CRAlgebra::new(&a, q)?;
        let t = c.associated_triple()?;
        let g = associated_graded(&a, t.filtration());
        let j = complex_structure(&c, t.filtration(), &g);
        return Ok((g, Some(j.matrix)));
    }
    let l0 = match &s.l {
        Some(l) => load_subspace(l, &s.algebra, n)?,
        None => {
            let full = Subspace::full(n);
            let derived = a.bracket_spaces(&full, &full);
            if derived.is_zero() {
                return Ok((GradedLieAlgebra::new(a, vec![-1; n]), None));
            }
            Subspace::span_of(n, &full.complement_in(&derived))
        }
    };
    let f = match optional(&s.h, &s.algebra, n)? {
        Some(h) => ContactTriple::new(ContactPair::new(a.clone(), l0)?, h)?.filtration().clone(),
        None => ContactFiltration::compute(&a, &l0)?,
    };
    Ok((associated_graded(&a, &f), None))
}

fn dims_json(g: &GradedLieAlgebra) -> Value {
    Value::Array(g.dims().into_iter().map(|(h, d)| json!({ "degree": h, "dim": d })).collect())
}

fn grade(args: &Subspaces) -> Res {
    let (g, j) = graded_input(args)?;
    let mut out = json!({
        "dims": dims_json(&g),
        "fundamental": g.is_fundamental(),
        "transitive": g.is_transitive(),
    });
    if let Ok(form) = g.levi_form() {
        out["levi_form_nondegenerate"] = json!(form.is_nondegenerate());
    }
    if let Some(j) = j {
        out["complex_structure"] = matrix_rows(&j);
    }
    Ok(out)
}

fn prolong(args: &ProlongArgs) -> Res {
    let (g, j) = graded_input(&args.spaces)?;
    let zero = match (args.zero, j) {
        (ZeroMode::Auto | ZeroMode::J, Some(j)) => DegreeZero::JCommuting(j),
        (ZeroMode::J, None) => return Err(CliError::new("MissingComplexStructure", "--zero j needs --q")),
        (ZeroMode::Auto | ZeroMode::All, _) => DegreeZero::AllDerivations,
        (ZeroMode::Graded, _) => degree_zero_action(&g),
    };
    let p = tanaka_prolong(&g, &zero, args.max_degree)?;
    let mut out = json!({
        "termination": p.termination,
        "dims": dims_json(&p.graded),
        "total_dim": p.total_dim(),
    });
    if let Some(k) = args.finiteness {
        out["finiteness"] = serde_json::to_value(finiteness_check(&p, k)?).expect("serializable");
    }
    Ok(out)
}

/// Basis pairs where `[R*_X, R*_Y] + R*_{[X,Y]}` is nonzero through order `N − 1`.
fn symbolic_failures(st: &StarRealization) -> Result<Vec<[usize; 2]>, CliError> {
    let a = st.algebra();
    let r = st.right_basis();
    let mut bad = Vec::new();
    for i in 0..a.dim() {
        for j in i + 1..a.dim() {
            let lhs = r[i].bracket(&r[j])?;
            let target = st.right(&a.bracket(&a.basis_vector(i), &a.basis_vector(j))).field;
            if !lhs.add_scaled(&Scalar::one(), &target).is_zero() {
                bad.push([i, j]);
            }
        }
    }
    Ok(bad)
}

fn realize(args: &RealizeArgs) -> Res {
    let a = load_algebra(&args.algebra)?;
    let h = optional(&args.h, &args.algebra, a.dim())?.unwrap_or_else(|| Subspace::zero(a.dim()));
    let st = StarRealization::new(&a, &h, args.order)?;
    let ideal = a.largest_ideal_in(&h);
    let mut out = json!({
        "order": args.order,
        "dim_v": st.dim_v(),
        "largest_ideal_in_h0": ideal.basis(),
    });
    match args.modp {
        Some(points) => {
            let check = FpCheck::new(&st, points, args.seed)?;
            let bad: Vec<[usize; 3]> =
                check.anti_homomorphism_failures().into_iter().map(|(i, j, m)| [i, j, m]).collect();
            out["method"] = json!("modp");
            out["points"] = json!(points);
            out["kernel_dim"] = json!(check.kernel_dim());
            out["anti_homomorphism_failures"] = json!(bad);
            out["agrees"] = json!(check.kernel_dim() == ideal.dim());
        }
        None => {
            let kernel = realization_kernel(&st);
            out["method"] = json!("exact");
            out["kernel"] = json!(kernel.basis());
            out["kernel_dim"] = json!(kernel.dim());
            out["anti_homomorphism_failures"] = json!(symbolic_failures(&st)?);
            out["agrees"] = json!(kernel == ideal);
        }
    }
    Ok(out)
}

fn symmetries(args: &SymmetryArgs) -> Res {
    let a = load_algebra(&args.algebra)?;
    let n = a.dim();
    let h = optional(&args.h, &args.algebra, n)?.unwrap_or_else(|| Subspace::zero(n));
    let dist = match (&args.l, &args.q) {
        (Some(l), _) => Distribution::Real(load_subspace(l, &args.algebra, n)?),
        (None, Some(q)) => Distribution::Complex(load_subspace(q, &args.algebra, n)?),
        (None, None) => return Err(CliError::new("MissingDistribution", "pass --l or --q")),
    };
    let st = StarRealization::new(&a, &h, args.order)?;
    Ok(serde_json::to_value(truncated_symmetries(&st, &dist)?).expect("serializable"))
}

fn export(args: &ExportArgs) -> Res {
    let a = load_algebra(&args.algebra)?;
    fs::create_dir_all(&args.out).map_err(|e| CliError::new("Io", e.to_string()))?;
    let mut written = Vec::new();
    let mut write = |name: &str, text: String| -> Result<(), CliError> {
        let path = args.out.join(name);
        fs::write(&path, text + "\n").map_err(|e| CliError::new("Io", format!("{}: {e}", path.display())))?;
        written.push(name.to_string());
        Ok(())
    };
    write("algebra.json", Manifest::from_algebra(&a).to_json())?;
    for (name, s) in canonical_subspaces(&args.algebra) {
        let text = serde_json::to_string_pretty(&SubspaceFile::from_subspace(&s)).expect("serializable");
        write(&format!("{name}.json"), text)?;
    }
    Ok(json!({ "name": a.name(), "dim": a.dim(), "files": written }))
}
