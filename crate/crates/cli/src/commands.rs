use std::fs;
use std::path::Path;

use mifx_core::baselines::{lda_fit, pca_fit};
use mifx_core::data::{load_csv, Dataset, LabelColumn, NormMode};
use mifx_core::eval::{
    config_digest, cross_validate_with_plan, load_reports, render_table, CvOptions, EvalMethod, EvaluationReport,
    ReferenceTable, TableFormat,
};
use mifx_core::extraction::{self, component_diagnostics, ExtractionConfig, ModelFile};
use mifx_core::info::{
    bayes_error_bounds, entropy_binned, entropy_discrete, mi_2d_cd, mi_cc, mi_cd, HistogramConfig, LogBase,
    RangePolicy,
};
use mifx_core::{Error, Result};

use crate::args::{
    BaseArg, CompareArgs, DataArgs, EvaluateArgs, ExtractArgs, ExtractMethod, ExtractionArgs, HistArgs, MiArgs,
    NormArg, TableFormatArg,
};

fn load(args: &DataArgs) -> Result<Dataset> {
    let label: LabelColumn = args.label_col.parse().unwrap_or(LabelColumn::Last);
    load_csv(&args.data, &label, !args.no_header)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn apply_hist(cfg: &mut HistogramConfig, args: &HistArgs) -> Result<()> {
    if let Some(b) = args.bins {
        cfg.n_bins = b;
    }
    if let Some(r) = &args.range {
        let parts: Vec<&str> = r.split(',').map(str::trim).collect();
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("invalid range bound {s:?}")))
        };
        if parts.len() != 2 {
            return Err(Error::InvalidArgument(format!("range must be LO,HI, got {r:?}")));
        }
        cfg.range = RangePolicy::Fixed {
            lo: parse(parts[0])?,
            hi: parse(parts[1])?,
        };
    }
    if let Some(b) = args.base {
        cfg.log_base = match b {
            BaseArg::Two => LogBase::Two,
            BaseArg::E => LogBase::E,
        };
    }
    if args.bias_correction {
        cfg.bias_correction = true;
    }
    cfg.validate()
}

fn extraction_config(args: &ExtractionArgs) -> Result<ExtractionConfig> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            serde_json::from_str(&text).map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?
        }
        None => ExtractionConfig::default(),
    };
    apply_hist(&mut cfg.hist, &args.hist)?;
    let ga = &mut cfg.ga;
    if let Some(v) = args.population {
        ga.population = v;
    }
    if let Some(v) = args.generations {
        ga.generations = v;
    }
    if let Some(v) = args.restarts {
        ga.restarts = v;
    }
    if let Some(v) = args.refine_steps {
        ga.refine_steps = v;
    }
    cfg.ga.validate()?;
    Ok(cfg)
}

fn check_dims(max: usize, d: usize) -> Result<()> {
    if max > d {
        return Err(Error::InvalidArgument(format!(
            "dims exceeds feature count: {max} > {d}"
        )));
    }
    Ok(())
}

/// Parse "a-b" ranges and comma lists, e.g. "1-3,5".
pub fn parse_dims(spec: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidArgument(format!("invalid dims {spec:?}"));
    let mut dims = Vec::new();
    for part in spec.split(',').map(str::trim) {
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(bad());
                }
                dims.extend(a..=b);
            }
            None => dims.push(num(part)?),
        }
    }
    if dims.contains(&0) {
        return Err(bad());
    }
    dims.sort_unstable();
    dims.dedup();
    Ok(dims)
}

fn table_format(f: TableFormatArg) -> TableFormat {
    match f {
        TableFormatArg::Markdown => TableFormat::Markdown,
        TableFormatArg::Csv => TableFormat::Csv,
        TableFormatArg::Json => TableFormat::Json,
    }
}

pub fn extract(args: ExtractArgs) -> Result<()> {
    let data = load(&args.data)?;
    check_dims(args.dims, data.ncols())?;
    if args.dims == 0 {
        return Err(Error::InvalidArgument("dims must be positive".into()));
    }
    let cfg = ExtractionConfig {
        t: args.dims,
        ..extraction_config(&args.extraction)?
    };
    let (projection, diagnostics) = match args.method {
        ExtractMethod::Mifx => {
            let ex = extraction::extract(&data, &cfg, args.seed)?;
            (ex.projection, ex.diagnostics)
        }
        ExtractMethod::Pca | ExtractMethod::Lda => {
            let p = if args.method == ExtractMethod::Pca {
                pca_fit(&data, cfg.t)?
            } else {
                lda_fit(&data, cfg.t)?
            };
            let diag = component_diagnostics(&p, &data, &cfg)?;
            (p, diag)
        }
    };
    let model = ModelFile::new(&projection, cfg.hist, args.seed, diagnostics);
    model.save(&args.out)?;

    let digest = config_digest(&serde_json::json!({
        "method": projection.method(),
        "seed": args.seed,
        "extraction": cfg,
    }))?;
    println!("component  relevance  penalty  objective");
    for (i, d) in model.diagnostics.iter().enumerate() {
        println!(
            "{:>9}  {:>9.4}  {:>7.4}  {:>9.4}",
            i + 1,
            d.relevance,
            d.penalty,
            d.objective
        );
    }
    println!("seed: {}", args.seed);
    println!("config_digest: {digest}");
    println!("model: {}", args.out.display());
    Ok(())
}

fn parse_methods(spec: &str) -> Result<Vec<EvalMethod>> {
    if spec.eq_ignore_ascii_case("all") {
        return Ok(EvalMethod::ALL.to_vec());
    }
    let mut methods = spec
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<Vec<EvalMethod>>>()?;
    methods.sort();
    methods.dedup();
    Ok(methods)
}

pub fn evaluate(args: EvaluateArgs) -> Result<()> {
    let methods = parse_methods(&args.method)?;
    let dims = parse_dims(&args.dims)?;
    let data = load(&args.data)?;
    check_dims(*dims.last().expect("parse_dims is nonempty"), data.ncols())?;
    let raw_columns = args
        .raw_columns
        .as_deref()
        .map(|s| {
            s.split(',')
                .map(|c| data.resolve_column(c.trim()))
                .collect::<Result<Vec<usize>>>()
        })
        .transpose()?;
    let dataset_name = args.name.clone().unwrap_or_else(|| {
        args.data
            .data
            .file_stem()
            .map_or_else(|| "dataset".into(), |s| s.to_string_lossy().into_owned())
    });
    let opts = CvOptions {
        folds: args.folds,
        seed: args.seed,
        stratified: !args.no_stratify,
        norm: match args.norm {
            NormArg::PerFeature => NormMode::PerFeature,
            NormArg::Global => NormMode::Global,
        },
        knn_k: 1,
        dataset_name,
        extraction: extraction_config(&args.extraction)?,
        raw_columns,
        parallel: !args.serial,
    };
    let plan = opts.plan(&data)?;
    let reports = methods
        .iter()
        .map(|&m| cross_validate_with_plan(&data, m, &dims, &plan, &opts))
        .collect::<Result<Vec<EvaluationReport>>>()?;

    if let Some(out) = &args.out {
        let mut json = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])?
        } else {
            serde_json::to_string_pretty(&reports)?
        };
        json.push('\n');
        write_file(out, &json)?;
    }
    print!("{}", render_table(&reports, table_format(args.format), None)?);
    println!("seed: {}", opts.seed);
    for r in &reports {
        println!("config_digest ({}): {}", r.method, r.config_digest);
    }
    Ok(())
}

pub fn mi(args: MiArgs) -> Result<()> {
    let data = load(&args.data)?;
    let mut cfg = HistogramConfig::default();
    apply_hist(&mut cfg, &args.hist)?;
    let unit = match cfg.log_base {
        LogBase::Two => "bits",
        LogBase::E => "nats",
    };
    let to_bits = |v: f64| match cfg.log_base {
        LogBase::Two => v,
        LogBase::E => v / std::f64::consts::LN_2,
    };
    let column = |key: &str| -> Result<Vec<f64>> { Ok(data.column(data.resolve_column(key)?).to_vec()) };
    let x = column(&args.x)?;
    let h_x = entropy_binned(&x, &cfg)?;
    println!("H({}) = {h_x:.6} {unit}", args.x);

    if let Some(y_key) = &args.y {
        let y = column(y_key)?;
        println!("H({y_key}) = {:.6} {unit}", entropy_binned(&y, &cfg)?);
        println!("I({}; {y_key}) = {:.6} {unit}", args.x, mi_cc(&x, &y, &cfg)?);
        return Ok(());
    }

    let h_c = entropy_discrete(data.labels(), cfg.log_base)?;
    println!("H(C) = {h_c:.6} {unit}");
    let (name, mi) = match &args.x2 {
        Some(k2) => {
            let x2 = column(k2)?;
            (format!("I({}, {k2}; C)", args.x), mi_2d_cd(&x, &x2, data.labels(), &cfg)?)
        }
        None => (format!("I({}; C)", args.x), mi_cd(&x, data.labels(), &cfg)?),
    };
    println!("{name} = {mi:.6} {unit}");
    let bounds = bayes_error_bounds(to_bits(h_c), to_bits(mi), data.n_classes())?;
    println!("Bayes error lower bound = {:.6}", bounds.lower);
    println!("Bayes error upper bound = {:.6}", bounds.upper);
    Ok(())
}

pub fn compare(args: CompareArgs) -> Result<()> {
    let mut reports = Vec::new();
    for path in &args.reports {
        reports.extend(load_reports(path)?);
    }
    for r in &reports {
        r.validate()?;
    }
    let reference = args.reference.as_ref().map(ReferenceTable::load).transpose()?;
    let table = render_table(&reports, table_format(args.format), reference.as_ref())?;
    match &args.out {
        Some(out) => write_file(out, &table),
        None => {
            print!("{table}");
            Ok(())
        }
    }
}
