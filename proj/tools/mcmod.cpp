// Command-line surface over the library: build algebras and module points
// from JSON descriptors, run the checks, and emit deterministic JSON reports.
//
// Exit status: 0 on success, 1 on domain errors, 2 on parse errors.

#include "mcmod/mcmod.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using mcmod::Json;

struct JobDescriptor {
    std::string command;
    std::string algebra_path;
    std::string module_path;
    std::string output_path;
    bool no_timestamp = false;
    bool pretty = false;

    // flags, resolved with their defaults
    std::string character = "extremal";
    std::string mode = "exact-lift";
    std::vector<std::uint32_t> fields{2, 3};
    std::size_t budget = 10;
    std::vector<long long> coeffs;
    long long at = 0;
    long long value = 0;
    int t = 1;
    std::vector<long long> values;
    int base = 0;
    int p_prime = 0;
    int target_degree = 0;
    bool no_augment = false;
    bool orbits = false;
    bool emit_normalized = false;
    std::vector<int> window;
    std::vector<int> dims;
    std::uint64_t point_budget = 1ull << 20;
    std::uint64_t group_budget = 1ull << 20;
};

unsigned worker_count() {
    unsigned threads = std::max(1u, std::min(std::thread::hardware_concurrency(), 4u));
    if (const char* env = std::getenv("MC_MODULI_THREADS")) {
        try {
            const unsigned cap = static_cast<unsigned>(std::stoul(env));
            threads = std::max(1u, std::min(threads, cap));
        } catch (const std::exception&) {
            throw std::invalid_argument("MC_MODULI_THREADS must be a positive integer");
        }
    }
    return threads;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    return buf;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

Json parameters_json(const JobDescriptor& job) {
    Json p;
    if (!job.algebra_path.empty()) p["algebra"] = job.algebra_path;
    if (!job.module_path.empty()) p["module"] = job.module_path;
    if (job.command == "stability") {
        p["character"] = job.character;
        p["mode"] = job.mode;
        p["fields"] = job.fields;
        p["budget"] = job.budget;
    }
    if (job.command == "hilbert eval") {
        p["coeffs"] = job.coeffs;
        p["at"] = job.at;
    }
    if (job.command == "hilbert primitive") p["coeffs"] = job.coeffs;
    if (job.command == "hilbert macaulay") {
        p["value"] = job.value;
        p["t"] = job.t;
    }
    if (job.command == "hilbert gotzmann") {
        p["values"] = job.values;
        p["base"] = job.base;
    }
    if (job.command == "hilbert extend") p["targetDegree"] = job.target_degree;
    if (job.command == "pipeline") {
        p["truncationDegree"] = job.p_prime;
        p["targetDegree"] = job.target_degree;
        p["fields"] = job.fields;
        p["budget"] = job.budget;
    }
    if (job.command == "ext") p["augmented"] = !job.no_augment;
    if (job.command == "ideal" || job.command == "dg-verify" || job.command == "scan-mc") {
        p["window"] = job.window;
        p["dims"] = job.dims;
    }
    if (job.command == "scan-mc") {
        p["orbits"] = job.orbits;
        p["pointBudget"] = job.point_budget;
        p["groupBudget"] = job.group_budget;
    }
    return p;
}

template <class F>
void require_module_point(const mcmod::Cochain<F>& mu, const std::string& command) {
    if (mu.degree() != 1)
        throw std::domain_error(command + " expects a degree-1 cochain (a module point), got degree " +
                                std::to_string(mu.degree()));
}

mcmod::DimensionVector dims_from_flags(const JobDescriptor& job) {
    if (job.window.size() != 2) throw std::invalid_argument("--window expects p,q");
    if (job.dims.empty()) throw std::invalid_argument("--dims expects a comma list");
    if (static_cast<int>(job.dims.size()) != job.window[1] - job.window[0] + 1)
        throw std::invalid_argument("--dims length must match the window");
    return mcmod::DimensionVector(job.window[0], job.dims);
}

template <class Algebra>
mcmod::Character character_from_flag(const std::string& flag, const mcmod::DimensionVector& dims,
                                     const Algebra& algebra) {
    if (flag == "extremal") return mcmod::extremal_character(dims);
    if (flag == "determinant") return mcmod::determinant_character(algebra, dims);
    if (flag.rfind("custom:", 0) == 0) {
        std::vector<long long> w;
        std::stringstream ss(flag.substr(7));
        std::string item;
        while (std::getline(ss, item, ',')) w.push_back(std::stoll(item));
        return mcmod::Character(dims, std::move(w));
    }
    throw std::invalid_argument("unknown character \"" + flag + "\"");
}

// ---- per-field command bodies ---------------------------------------------------

template <class F>
Json run_mc_check(const JobDescriptor& job, const F& field) {
    const auto file = mcmod::parse_algebra_file(load_json(job.algebra_path));
    auto alg = std::make_shared<const mcmod::GradedAlgebra<F>>(mcmod::build_algebra(file, field));
    auto mu = mcmod::parse_cochain(load_json(job.module_path), alg);
    require_module_point(mu, "mc-check");
    auto residual = mcmod::mc_residual(mu);
    std::size_t nonzero = 0;
    const auto coords = mcmod::flatten(residual);
    for (const auto& c : coords)
        if (!field.is_zero(c)) ++nonzero;
    Json out;
    out["isModule"] = residual.is_zero();
    out["residualDimension"] = coords.size();
    out["residualNonzeroCount"] = nonzero;
    out["algebraCommutative"] = alg->is_commutative();
    if (job.emit_normalized) out["module"] = mcmod::cochain_to_json(mu);
    return out;
}

template <class F>
Json run_ideal(const JobDescriptor& job, const F& field) {
    const auto file = mcmod::parse_algebra_file(load_json(job.algebra_path));
    auto alg = std::make_shared<const mcmod::GradedAlgebra<F>>(mcmod::build_algebra(file, field));
    const auto dims = dims_from_flags(job);
    auto ideal = mcmod::mc_ideal(alg, dims);
    Json out = mcmod::mc_ideal_to_json(ideal);
    if (job.pretty) {
        std::string text;
        for (const auto& g : ideal.generators) text += g.str() + "\n";
        out["text"] = text;
    }
    return out;
}

template <class F>
Json run_dg_verify(const JobDescriptor& job, const F& field) {
    const auto file = mcmod::parse_algebra_file(load_json(job.algebra_path));
    auto alg = std::make_shared<const mcmod::GradedAlgebra<F>>(mcmod::build_algebra(file, field));
    const auto dims = dims_from_flags(job);
    auto pres = mcmod::build_dg_presentation(alg, dims);
    Json out;
    out["qSquaredZero"] = mcmod::verify_q_squared(pres);
    out["degreesConsistent"] = mcmod::presentation_degrees_consistent(pres);
    out["generatorCount"] = pres.table->size();
    out["presentation"] = mcmod::presentation_to_json(pres);
    if (job.pretty) out["text"] = mcmod::presentation_to_text(pres);
    return out;
}

template <class F>
Json run_ext(const JobDescriptor& job, const F& field) {
    const auto file = mcmod::parse_algebra_file(load_json(job.algebra_path));
    auto alg = std::make_shared<const mcmod::GradedAlgebra<F>>(mcmod::build_algebra(file, field));
    auto mu = mcmod::parse_cochain(load_json(job.module_path), alg);
    require_module_point(mu, "ext");
    auto report = mcmod::tangent_cohomology(mu, !job.no_augment);
    Json out = mcmod::cohomology_to_json(report);
    auto [tangent, obstruction] = mcmod::deformation_spaces(mu);
    out["deformation"] = Json{{"tangentDim", tangent}, {"obstructionDim", obstruction}};
    return out;
}

Json run_stability_rational(const JobDescriptor& job) {
    mcmod::RationalField q;
    const auto file = mcmod::parse_algebra_file(load_json(job.algebra_path));
    auto alg = std::make_shared<const mcmod::GradedAlgebra<mcmod::RationalField>>(
        mcmod::build_algebra(file, q));
    auto mu = mcmod::parse_cochain(load_json(job.module_path), alg);
    require_module_point(mu, "stability");
    const auto theta = character_from_flag(job.character, mu.dims(), *alg);
    if (job.mode != "finite-field" && job.mode != "exact-lift")
        throw std::invalid_argument("unknown mode \"" + job.mode + "\"");
    const auto mode = job.mode == "finite-field" ? mcmod::StabilityMode::FiniteField
                                                 : mcmod::StabilityMode::ExactLift;
    auto verdict = mcmod::check_stability(mu, theta, job.fields, mode, job.budget);
    Json out = mcmod::verdict_to_json(verdict);
    out["character"] = theta.weights;
    return out;
}

Json run_stability_prime(const JobDescriptor& job, const mcmod::PrimeField& field) {
    const auto file = mcmod::parse_algebra_file(load_json(job.algebra_path));
    auto alg =
        std::make_shared<const mcmod::GradedAlgebra<mcmod::PrimeField>>(mcmod::build_algebra(file, field));
    auto mu = mcmod::parse_cochain(load_json(job.module_path), alg);
    require_module_point(mu, "stability");
    for (std::uint32_t p : job.fields)
        if (p != field.modulus())
            throw std::domain_error("module is defined over F_" + std::to_string(field.modulus()) +
                                    "; cannot scan over F_" + std::to_string(p));
    const auto theta = character_from_flag(job.character, mu.dims(), *alg);
    auto scan = mcmod::scan_stability(mu, theta, job.budget);
    mcmod::StabilityVerdict verdict;
    verdict.status = scan.status;
    verdict.evidence_primes = {field.modulus()};
    verdict.scans = {scan};
    Json out = mcmod::verdict_to_json(verdict);
    out["character"] = theta.weights;
    return out;
}

Json run_hilbert_extend_any(const JobDescriptor& job) {
    const auto file = mcmod::parse_algebra_file(load_json(job.algebra_path));
    Json out;
    if (file.field.kind == mcmod::FieldSpec::Kind::rationals) {
        mcmod::RationalField q;
        auto alg = std::make_shared<const mcmod::GradedAlgebra<mcmod::RationalField>>(
            mcmod::build_algebra(file, q));
        auto mu = mcmod::parse_cochain(load_json(job.module_path), alg);
        require_module_point(mu, "hilbert extend");
        out["fromDegree"] = mu.dims().lo;
        out["dims"] = mcmod::extend_module(mu, job.target_degree);
    } else {
        mcmod::PrimeField k(file.field.p);
        auto alg = std::make_shared<const mcmod::GradedAlgebra<mcmod::PrimeField>>(
            mcmod::build_algebra(file, k));
        auto mu = mcmod::parse_cochain(load_json(job.module_path), alg);
        require_module_point(mu, "hilbert extend");
        out["fromDegree"] = mu.dims().lo;
        out["dims"] = mcmod::extend_module(mu, job.target_degree);
    }
    return out;
}

Json run_pipeline(const JobDescriptor& job) {
    const auto file = mcmod::parse_algebra_file(load_json(job.algebra_path));
    if (file.field.kind != mcmod::FieldSpec::Kind::rationals)
        throw std::domain_error("the pipeline needs a rational module point (stability lifts witnesses)");
    mcmod::RationalField q;
    auto alg = std::make_shared<const mcmod::GradedAlgebra<mcmod::RationalField>>(
        mcmod::build_algebra(file, q));
    auto mu = mcmod::parse_cochain(load_json(job.module_path), alg);
    require_module_point(mu, "pipeline");
    auto report = mcmod::sheaf_stability_pipeline(mu, job.p_prime, job.target_degree, job.fields, job.budget);
    return mcmod::pipeline_to_json(report);
}

Json run_scan(const JobDescriptor& job) {
    const auto file = mcmod::parse_algebra_file(load_json(job.algebra_path));
    if (file.field.kind != mcmod::FieldSpec::Kind::prime)
        throw std::domain_error("scan-mc needs a prime field (\"Fp:<p>\")");
    mcmod::PrimeField k(file.field.p);
    auto alg =
        std::make_shared<const mcmod::GradedAlgebra<mcmod::PrimeField>>(mcmod::build_algebra(file, k));
    mcmod::ScanOptions options;
    options.orbits = job.orbits;
    options.point_budget = job.point_budget;
    options.group_budget = job.group_budget;
    options.threads = worker_count();
    auto report = mcmod::scan_mc(alg, dims_from_flags(job), options);
    Json out;
    out["p"] = report.p;
    out["l1Dimension"] = report.l1_dimension;
    out["totalPoints"] = report.total_points;
    out["mcCountResidual"] = report.mc_count_residual;
    out["mcCountIdeal"] = report.mc_count_ideal;
    out["agree"] = report.agree;
    if (report.orbit_count) out["orbitCount"] = *report.orbit_count;
    out["threadsUsed"] = report.threads_used;
    return out;
}

// Field-generic dispatch for the commands that work over any field.
Json run_field_generic(const JobDescriptor& job) {
    const auto file = mcmod::parse_algebra_file(load_json(job.algebra_path));
    auto with_field = [&](auto field) {
        if (job.command == "mc-check") return run_mc_check(job, field);
        if (job.command == "ideal") return run_ideal(job, field);
        if (job.command == "dg-verify") return run_dg_verify(job, field);
        if (job.command == "ext") return run_ext(job, field);
        throw std::logic_error("unhandled command " + job.command);
    };
    if (file.field.kind == mcmod::FieldSpec::Kind::rationals) return with_field(mcmod::RationalField{});
    return with_field(mcmod::PrimeField{file.field.p});
}

Json run_result(const JobDescriptor& job) {
    if (job.command == "mc-check" || job.command == "ideal" || job.command == "dg-verify" ||
        job.command == "ext")
        return run_field_generic(job);
    if (job.command == "stability") {
        const auto file = mcmod::parse_algebra_file(load_json(job.algebra_path));
        if (file.field.kind == mcmod::FieldSpec::Kind::rationals) return run_stability_rational(job);
        return run_stability_prime(job, mcmod::PrimeField{file.field.p});
    }
    if (job.command == "hilbert eval") {
        Json out;
        out["value"] = mcmod::evaluate(mcmod::HilbertPolynomial(job.coeffs), job.at).str();
        return out;
    }
    if (job.command == "hilbert primitive") {
        Json out;
        out["primitive"] = mcmod::is_primitive(mcmod::HilbertPolynomial(job.coeffs));
        return out;
    }
    if (job.command == "hilbert macaulay") {
        const auto rep = mcmod::macaulay_rep(job.value, job.t);
        Json out;
        out["terms"] = rep.terms;
        out["bound"] = mcmod::macaulay_bound(job.value, job.t);
        return out;
    }
    if (job.command == "hilbert gotzmann")
        return mcmod::gotzmann_to_json(mcmod::gotzmann_check(job.values, job.base));
    if (job.command == "hilbert extend") return run_hilbert_extend_any(job);
    if (job.command == "pipeline") return run_pipeline(job);
    if (job.command == "scan-mc") return run_scan(job);
    throw std::logic_error("unhandled command " + job.command);
}

int run(const JobDescriptor& job) {
    Json report;
    report["tool"] = "mcmod";
    report["version"] = mcmod::kVersion;
    report["command"] = job.command;
    report["parameters"] = parameters_json(job);
    if (!job.no_timestamp) report["timestamp"] = iso_timestamp();

    int status = 0;
    try {
        report["result"] = run_result(job);
    } catch (const std::domain_error& e) {
        report["error"] = e.what();
        status = 1;
    } catch (const Json::exception& e) {
        report["error"] = e.what();
        status = 2;
    } catch (const std::invalid_argument& e) {
        report["error"] = e.what();
        status = 2;
    } catch (const std::out_of_range& e) {
        report["error"] = e.what();
        status = 2;
    }

    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!job.output_path.empty()) {
        std::ofstream out(job.output_path);
        if (!out) {
            std::cerr << "cannot write " << job.output_path << "\n";
            return 1;
        }
        out << text;
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with finite graded modules over presented graded algebras"};
    app.require_subcommand(1);

    JobDescriptor job;

    auto add_io = [&](CLI::App* cmd, bool needs_algebra, bool needs_module) {
        if (needs_algebra)
            cmd->add_option("-A,--algebra", job.algebra_path, "algebra descriptor JSON")->required();
        if (needs_module)
            cmd->add_option("-m,--module", job.module_path, "module/cochain descriptor JSON")->required();
        cmd->add_option("-o,--output", job.output_path, "also write the report to this path");
        cmd->add_flag("--no-timestamp", job.no_timestamp, "omit the timestamp for byte-identical reports");
    };

    auto* mc_check = app.add_subcommand("mc-check", "decide whether a point satisfies the structure equation");
    add_io(mc_check, true, true);
    mc_check->add_flag("--emit-normalized", job.emit_normalized,
                       "echo the module point in canonical serialized form");

    auto* ideal = app.add_subcommand("ideal", "emit the quadratic equations cutting out the module locus");
    add_io(ideal, true, false);
    ideal->add_option("--window", job.window, "window p,q")->delimiter(',')->required();
    ideal->add_option("--dims", job.dims, "dimension vector")->delimiter(',')->required();
    ideal->add_flag("--pretty", job.pretty, "include a plain-text rendering");

    auto* dg = app.add_subcommand("dg-verify", "build the dg presentation and check q^2 = 0");
    add_io(dg, true, false);
    dg->add_option("--window", job.window, "window p,q")->delimiter(',')->required();
    dg->add_option("--dims", job.dims, "dimension vector")->delimiter(',')->required();
    dg->add_flag("--pretty", job.pretty, "include a plain-text rendering");

    auto* ext = app.add_subcommand("ext", "graded Hom/Ext dimensions at a module point");
    add_io(ext, true, true);
    ext->add_flag("--no-augment", job.no_augment, "report the unaugmented complex");

    auto* stab = app.add_subcommand("stability", "theta-stability verdict with certificates");
    add_io(stab, true, true);
    stab->add_option("--character", job.character, "extremal | determinant | custom:<comma list>");
    stab->add_option("--fields", job.fields, "prime fields to scan")->delimiter(',');
    stab->add_option("--mode", job.mode, "exact-lift | finite-field");
    stab->add_option("--budget", job.budget, "total-dimension budget for the enumeration");

    auto* hilbert = app.add_subcommand("hilbert", "Hilbert polynomial and Gotzmann machinery");
    hilbert->require_subcommand(1);

    auto* heval = hilbert->add_subcommand("eval", "evaluate a binomial-basis polynomial");
    heval->add_option("--coeffs", job.coeffs, "coefficients a_0,a_1,...")->delimiter(',')->required();
    heval->add_option("--at", job.at, "integer argument")->required();
    heval->add_option("-o,--output", job.output_path, "also write the report to this path");
    heval->add_flag("--no-timestamp", job.no_timestamp);

    auto* hprim = hilbert->add_subcommand("primitive", "is the polynomial primitive?");
    hprim->add_option("--coeffs", job.coeffs)->delimiter(',')->required();
    hprim->add_option("-o,--output", job.output_path);
    hprim->add_flag("--no-timestamp", job.no_timestamp);

    auto* hmac = hilbert->add_subcommand("macaulay", "Macaulay representation and bound");
    hmac->add_option("--value", job.value, "the integer a")->required();
    hmac->add_option("--t", job.t, "the index t")->required();
    hmac->add_option("-o,--output", job.output_path);
    hmac->add_flag("--no-timestamp", job.no_timestamp);

    auto* hgotz = hilbert->add_subcommand("gotzmann", "Macaulay bound and persistence along a sequence");
    hgotz->add_option("--values", job.values, "h_p,h_{p+1},...")->delimiter(',')->required();
    hgotz->add_option("--base", job.base, "the base degree p");
    hgotz->add_option("-o,--output", job.output_path);
    hgotz->add_flag("--no-timestamp", job.no_timestamp);

    auto* hext = hilbert->add_subcommand("extend", "extend a window module to a target degree");
    add_io(hext, true, true);
    hext->add_option("--target-degree", job.target_degree, "extend up to this degree")->required();

    auto* hpipe = hilbert->add_subcommand("pipeline", "the composite sheaf-stability certificate");
    add_io(hpipe, true, true);
    hpipe->add_option("--pprime", job.p_prime, "truncation degree p'")->required();
    hpipe->add_option("--target-degree", job.target_degree, "extension target degree")->required();
    hpipe->add_option("--fields", job.fields, "prime fields")->delimiter(',');
    hpipe->add_option("--budget", job.budget, "enumeration budget");

    auto* pipe = app.add_subcommand("pipeline", "alias for hilbert pipeline");
    add_io(pipe, true, true);
    pipe->add_option("--pprime", job.p_prime, "truncation degree p'")->required();
    pipe->add_option("--target-degree", job.target_degree, "extension target degree")->required();
    pipe->add_option("--fields", job.fields, "prime fields")->delimiter(',');
    pipe->add_option("--budget", job.budget, "enumeration budget");

    auto* scan = app.add_subcommand("scan-mc", "exhaustively count module points over a prime field");
    add_io(scan, true, false);
    scan->add_option("--window", job.window, "window p,q")->delimiter(',')->required();
    scan->add_option("--dims", job.dims, "dimension vector")->delimiter(',')->required();
    scan->add_flag("--orbits", job.orbits, "also count gauge orbits");
    scan->add_option("--point-budget", job.point_budget, "max points to scan");
    scan->add_option("--group-budget", job.group_budget, "max gauge group size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (mc_check->parsed()) job.command = "mc-check";
    if (ideal->parsed()) job.command = "ideal";
    if (dg->parsed()) job.command = "dg-verify";
    if (ext->parsed()) job.command = "ext";
    if (stab->parsed()) job.command = "stability";
    if (hilbert->parsed()) {
        if (heval->parsed()) job.command = "hilbert eval";
        if (hprim->parsed()) job.command = "hilbert primitive";
        if (hmac->parsed()) job.command = "hilbert macaulay";
        if (hgotz->parsed()) job.command = "hilbert gotzmann";
        if (hext->parsed()) job.command = "hilbert extend";
        if (hpipe->parsed()) job.command = "pipeline";
    }
    if (pipe->parsed()) job.command = "pipeline";
    if (scan->parsed()) job.command = "scan-mc";

    return run(job);
}
