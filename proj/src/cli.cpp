#include "splinedim/cli.hpp"

#include "splinedim/bounds.hpp"
#include "splinedim/complex.hpp"
#include "splinedim/mesh_io.hpp"
#include "splinedim/oracle.hpp"

#include <CLI11.hpp>

#include <optional>
#include <ostream>
#include <sstream>

namespace splinedim {

namespace {

struct ConfigError : Error {
    using Error::Error;
};
struct MeshRejected : Error {
    using Error::Error;
};

struct RunConfig {
    std::string command;
    std::string example;
    std::string mesh_path;
    int r = -1;
    std::string degrees;
    long d_lo = 0;
    long d_hi = -1;
    std::uint64_t seed = 1;
    std::string field = "prime";
    bool polytopal = false;
    std::string format = "csv";
    std::string gen_name;
    std::string gen_path;
};

long parse_degree(const std::string& s, const std::string& whole) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError("invalid degree range '" + whole + "'; use INT or A..B");
    try {
        return std::stol(s);
    } catch (const std::exception&) {
        throw ConfigError("degree out of range in '" + whole + "'");
    }
}

void resolve_degrees(RunConfig& cfg) {
    const auto dots = cfg.degrees.find("..");
    if (dots == std::string::npos) {
        cfg.d_lo = cfg.d_hi = parse_degree(cfg.degrees, cfg.degrees);
    } else {
        cfg.d_lo = parse_degree(cfg.degrees.substr(0, dots), cfg.degrees);
        cfg.d_hi = parse_degree(cfg.degrees.substr(dots + 2), cfg.degrees);
    }
    if (cfg.d_lo > cfg.d_hi) throw ConfigError("empty degree range '" + cfg.degrees + "'");
    const long cap = 10L * (cfg.r + 1);
    if (cfg.d_hi > cap)
        throw ConfigError("degree " + std::to_string(cfg.d_hi) + " exceeds the cap 10(r+1) = " + std::to_string(cap));
}

CellComplex load_complex(const RunConfig& cfg) {
    if (!cfg.example.empty() && !cfg.mesh_path.empty()) throw ConfigError("give either --example or a mesh file, not both");
    if (cfg.example.empty() && cfg.mesh_path.empty()) throw ConfigError("no input: give --example NAME or a mesh file");
    CellComplex c;
    if (!cfg.example.empty()) {
        auto e = parse_example(cfg.example);
        if (!e) throw ConfigError("unknown example '" + cfg.example + "'");
        c = generate_example(*e, cfg.seed);
    } else {
        c = read_mesh(cfg.mesh_path);
    }
    auto report = validate_manifold(c);
    if (!report.accepted()) {
        std::string msg = "mesh rejected:";
        for (const auto& v : report.violations) msg += "\n  " + v;
        throw MeshRejected(msg);
    }
    if (c.kind() == ComplexKind::polytopal && !cfg.polytopal)
        throw ConfigError("polytopal mesh needs --polytopal");
    return c;
}

FieldSpec field_of(const RunConfig& cfg) {
    if (cfg.field == "rational") return FieldSpec::rational();
    return FieldSpec::prime_field(cfg.seed);
}

NGammaMode mode_of(const RunConfig& cfg) {
    return cfg.polytopal ? NGammaMode::polytopal_extended : NGammaMode::standard;
}

class Table {
public:
    Table(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

    void meta(const std::string& key, const std::string& value) { meta_.emplace_back(key, value); }
    void header(std::vector<std::string> cols) { header_ = std::move(cols); }
    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
    void footer(const std::string& key, const std::string& value) { footer_.emplace_back(key, value); }

    void print() const {
        const bool md = cfg_.format == "md";
        if (md) {
            std::string line;
            for (const auto& [k, v] : meta_)
                if (k != "command") line += (line.empty() ? "" : ", ") + k + "=" + v;
            out_ << "**" << cfg_.command << "** " << line << "\n\n";
            print_md_row(header_);
            std::vector<std::string> sep(header_.size(), "---");
            print_md_row(sep);
            for (const auto& r : rows_) print_md_row(r);
            if (!footer_.empty()) out_ << "\n";
            for (const auto& [k, v] : footer_) out_ << k << ": " << v << "\n";
        } else {
            for (const auto& [k, v] : meta_) out_ << "# " << k << "=" << v << "\n";
            print_csv_row(header_);
            for (const auto& r : rows_) print_csv_row(r);
            for (const auto& [k, v] : footer_) out_ << "# " << k << "=" << v << "\n";
        }
    }

private:
    void print_csv_row(const std::vector<std::string>& cells) const {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }
    void print_md_row(const std::vector<std::string>& cells) const {
        out_ << "|";
        for (const auto& c : cells) out_ << " " << c << " |";
        out_ << "\n";
    }

    const RunConfig& cfg_;
    std::ostream& out_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::pair<std::string, std::string>> footer_;
};

void common_meta(Table& t, const RunConfig& cfg) {
    t.meta("command", cfg.command);
    t.meta("source", cfg.example.empty() ? "mesh:" + cfg.mesh_path : "example:" + cfg.example);
    t.meta("r", std::to_string(cfg.r));
    t.meta("seed", std::to_string(cfg.seed));
    t.meta("mode", cfg.polytopal ? "polytopal" : "standard");
}

std::string binom_col(long d) { return to_string(binom_trunc(d + 3, 3)); }

int cmd_lb(const RunConfig& cfg, std::ostream& out) {
    CellComplex c = load_complex(cfg);
    LowerBound bound(c, cfg.r, mode_of(cfg));
    Table t(cfg, out);
    common_meta(t, cfg);
    const bool md = cfg.format == "md";
    t.header(md ? std::vector<std::string>{"d", "C(d+3,3)", "LB"} : std::vector<std::string>{"d", "LB"});
    for (long d = cfg.d_lo; d <= cfg.d_hi; ++d) {
        std::string v = to_string(bound.value(d));
        t.row(md ? std::vector<std::string>{std::to_string(d), binom_col(d), v}
                 : std::vector<std::string>{std::to_string(d), v});
    }
    CubicPolynomial p = bound.polynomial();
    t.footer("polynomial", p.to_string());
    t.footer("valid_from", std::to_string(p.valid_from));
    t.print();
    return exit_ok;
}

int cmd_dim(const RunConfig& cfg, std::ostream& out) {
    CellComplex c = load_complex(cfg);
    FieldSpec field = field_of(cfg);
    Table t(cfg, out);
    common_meta(t, cfg);
    t.meta("field", cfg.field);
    if (field.kind == FieldKind::prime_field) t.meta("primes", std::to_string(field.retries));
    const bool md = cfg.format == "md";
    t.header(md ? std::vector<std::string>{"d", "C(d+3,3)", "dim"} : std::vector<std::string>{"d", "dim"});
    for (long d = cfg.d_lo; d <= cfg.d_hi; ++d) {
        std::string v = std::to_string(spline_dim(c, d, cfg.r, field));
        t.row(md ? std::vector<std::string>{std::to_string(d), binom_col(d), v}
                 : std::vector<std::string>{std::to_string(d), v});
    }
    t.print();
    return exit_ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    CellComplex c = load_complex(cfg);
    FieldSpec field = field_of(cfg);
    LowerBound bound(c, cfg.r, mode_of(cfg));
    std::vector<long> ds;
    std::vector<Integer> lbs, dims;
    for (long d = cfg.d_lo; d <= cfg.d_hi; ++d) {
        ds.push_back(d);
        lbs.push_back(bound.value(d));
        dims.push_back(Integer(static_cast<unsigned long>(spline_dim(c, d, cfg.r, field))));
    }
    // First degree from which LB = dim through the end of the range.
    std::optional<std::size_t> agree;
    for (std::size_t i = ds.size(); i-- > 0 && lbs[i] == dims[i];) agree = i;

    Table t(cfg, out);
    common_meta(t, cfg);
    t.meta("field", cfg.field);
    const bool md = cfg.format == "md";
    t.header(md ? std::vector<std::string>{"d", "C(d+3,3)", "LB", "dim", "dim-LB", "status"}
                : std::vector<std::string>{"d", "LB", "dim", "diff", "status"});
    bool failed = false;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        std::string status;
        if (agree && i >= *agree)
            status = "PASS";
        else if (agree)
            status = lbs[i] == dims[i] ? "PASS" : "pre-threshold";
        else
            status = lbs[i] <= dims[i] ? "PASS" : "FAIL";
        failed |= status == "FAIL";
        std::vector<std::string> row{std::to_string(ds[i])};
        if (md) row.push_back(binom_col(ds[i]));
        row.insert(row.end(), {to_string(lbs[i]), to_string(dims[i]), to_string(Integer(dims[i] - lbs[i])), status});
        t.row(row);
    }
    t.footer("agreement_from", agree ? std::to_string(ds[*agree]) : "none");
    t.footer("result", failed ? "FAIL" : "PASS");
    t.print();
    return exit_ok;
}

int cmd_hilbert(const RunConfig& cfg, std::ostream& out) {
    CellComplex c = load_complex(cfg);
    FieldSpec field = field_of(cfg);
    HilbertFit fit = hilbert_polynomial(c, cfg.r, field);
    CubicPolynomial lbp = lb_polynomial(c, cfg.r, mode_of(cfg));
    Table t(cfg, out);
    common_meta(t, cfg);
    t.meta("field", cfg.field);
    t.header({"key", "value"});
    t.row({"hilbert_polynomial", fit.poly.to_string()});
    t.row({"stabilized_at", std::to_string(fit.stabilized_at)});
    t.row({"lb_polynomial", lbp.to_string()});
    t.row({"match", fit.poly == lbp ? "yes" : "no"});
    t.print();
    return exit_ok;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
    auto e = parse_example(cfg.gen_name);
    if (!e) throw ConfigError("unknown example '" + cfg.gen_name + "'");
    CellComplex c = generate_example(*e, cfg.seed);
    if (cfg.gen_path == "-")
        out << format_mesh(c);
    else
        write_mesh(c, cfg.gen_path);
    return exit_ok;
}

template <class... Ts>
bool is_any(const std::exception& e) {
    return ((dynamic_cast<const Ts*>(&e) != nullptr) || ...);
}

std::string example_list() {
    std::string s;
    for (auto e : all_examples()) s += (s.empty() ? "" : ", ") + example_name(e);
    return s;
}

}  // namespace

int exit_code_for(const std::exception& e) {
    if (is_any<ConfigError>(e)) return exit_config;
    if (is_any<MeshIOError>(e)) return exit_io;
    if (is_any<FieldFailure>(e)) return exit_field_failure;
    if (is_any<MeshRejected, MeshFormatError, DegenerateCell, DuplicateCell, InvalidLattice, UnknownVertex,
               InvalidEdgeValence, MalformedStar>(e))
        return exit_mesh_invalid;
    return 1;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Lower bounds and exact dimensions of trivariate C^r spline spaces", "spline-dim"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool needs_degrees) {
        sub->add_option("mesh", cfg.mesh_path, "mesh file (JSON)");
        sub->add_option("--example", cfg.example, "builtin example: " + example_list());
        sub->add_option("-r", cfg.r, "smoothness order")->required()->check(CLI::NonNegativeNumber);
        auto* d = sub->add_option("-d", cfg.degrees, "degree INT or range A..B");
        if (needs_degrees) d->required();
        sub->add_option("--seed", cfg.seed, "perturbation and prime seed");
        sub->add_option("--field", cfg.field, "rank field")->check(CLI::IsMember({"rational", "prime"}));
        sub->add_flag("--polytopal", cfg.polytopal, "use the polytopal vertex correction");
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "md"}));
    };
    add_common(app.add_subcommand("lb", "evaluate the lower bound"), true);
    add_common(app.add_subcommand("dim", "exact spline dimension by rank computation"), true);
    add_common(app.add_subcommand("verify", "compare the lower bound with the exact dimension"), true);
    add_common(app.add_subcommand("hilbert", "fit the Hilbert polynomial and compare with the bound"), false);
    auto* gen = app.add_subcommand("gen", "write a builtin example as a mesh file ('-' for stdout)");
    gen->add_option("name", cfg.gen_name, "example: " + example_list())->required();
    gen->add_option("path", cfg.gen_path, "output path")->required();
    gen->add_option("--seed", cfg.seed, "perturbation seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        if (cfg.command != "gen" && !cfg.degrees.empty()) resolve_degrees(cfg);
        if (cfg.command == "lb") return cmd_lb(cfg, out);
        if (cfg.command == "dim") return cmd_dim(cfg, out);
        if (cfg.command == "verify") return cmd_verify(cfg, out);
        if (cfg.command == "hilbert") return cmd_hilbert(cfg, out);
        return cmd_gen(cfg, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace splinedim
