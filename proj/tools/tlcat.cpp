#include <complex>
#include <cstdlib>
#include <cxxabi.h>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tlcat/diagram.hpp"
#include "tlcat/errors.hpp"
#include "tlcat/jones_wenzl.hpp"
#include "tlcat/json_io.hpp"
#include "tlcat/morphism.hpp"
#include "tlcat/repn.hpp"
#include "tlcat/scalar.hpp"
#include "tlcat/verify.hpp"
#include "tlcat/words.hpp"

namespace {

using namespace tlcat;

// Bad flag combinations detected after CLI11's own parse.  main maps these
// to the usage exit code, domain errors from the library to 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FileError : Error {
    using Error::Error;
};

// Unqualified class name of a thrown error, so messages say which library
// error fired.
std::string error_name(const std::exception& e) {
    int status = 0;
    char* raw = abi::__cxa_demangle(typeid(e).name(), nullptr, nullptr, &status);
    std::string name = (status == 0 && raw) ? raw : typeid(e).name();
    std::free(raw);
    size_t colons = name.rfind("::");
    if (colons != std::string::npos) name = name.substr(colons + 2);
    return name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write " + path);
    out << content;
    out.flush();
    if (!out) throw FileError("short write to " + path);
}

// Empty path means stdout.
void emit(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        write_file(path, content);
}

double parse_double_flag(const std::string& text, const char* flag) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || !end || *end != '\0')
        throw UsageError(std::string(flag) + " expects a number, got '" + text + "'");
    return value;
}

// "re" or "(re,im)", the same shapes Scalar::str emits.
std::complex<double> parse_complex_flag(const std::string& text, const char* flag) {
    if (text.empty() || text.front() != '(') return {parse_double_flag(text, flag), 0.0};
    if (text.back() != ')' || text.size() < 2)
        throw UsageError(std::string(flag) + " expects re or (re,im), got '" + text + "'");
    std::string body = text.substr(1, text.size() - 2);
    size_t comma = body.find(',');
    if (comma == std::string::npos)
        throw UsageError(std::string(flag) + " expects re or (re,im), got '" + text + "'");
    return {parse_double_flag(body.substr(0, comma), flag),
            parse_double_flag(body.substr(comma + 1), flag)};
}

// Backend flags shared by the commands that build coefficients from scratch
// rather than reading them from a file.
struct BackendOpts {
    std::string field = "generic";
    int order = 0;
    std::string d_text;
    std::string q_text;
    double tol = 1e-9;
};

void attach_backend(CLI::App* cmd, BackendOpts& opts) {
    cmd->add_option("--backend", opts.field, "coefficient field: generic, cyclotomic or float")
        ->check(CLI::IsMember({"generic", "cyclotomic", "float"}));
    cmd->add_option("--order", opts.order, "cyclotomic order N, selects Q(zeta_N)");
    cmd->add_option("--d", opts.d_text, "loop value for the float backend, re or (re,im)");
    cmd->add_option("--q", opts.q_text, "q value for the float backend, re or (re,im)");
    cmd->add_option("--tol", opts.tol, "comparison tolerance for the float backend");
}

ScalarBackend make_backend(const BackendOpts& opts) {
    bool has_d = !opts.d_text.empty();
    bool has_q = !opts.q_text.empty();
    if (opts.field == "generic") {
        if (opts.order != 0 || has_d || has_q)
            throw UsageError("--order, --d and --q require --backend cyclotomic or float");
        return ScalarBackend::generic();
    }
    if (opts.field == "cyclotomic") {
        if (has_d || has_q) throw UsageError("--d and --q apply to the float backend only");
        if (opts.order < 1) throw UsageError("--backend cyclotomic needs --order N with N >= 1");
        return ScalarBackend::cyclotomic(opts.order);
    }
    if (opts.order != 0) throw UsageError("--order applies to the cyclotomic backend only");
    if (has_d == has_q) throw UsageError("--backend float needs exactly one of --d and --q");
    if (has_q) return ScalarBackend::floating(parse_complex_flag(opts.q_text, "--q"), opts.tol);
    std::complex<double> d = parse_complex_flag(opts.d_text, "--d");
    if (d.imag() == 0.0) return ScalarBackend::floating_d(d.real(), opts.tol);
    return ScalarBackend::floating(0.5 * (d + std::sqrt(d * d - 4.0)), opts.tol);
}

// One line per coefficient, keyed by the reduced word of its diagram.
std::string pretty_terms(const Morphism& f) {
    std::ostringstream out;
    for (const auto& [diagram, coeff] : f.terms())
        out << coeff.str() << " | " << diagram_to_reduced(diagram).str() << '\n';
    return out.str();
}

void apply_env_cap() {
    const char* cap = std::getenv("TLCAT_MAX_STRANDS");
    if (!cap) return;
    char* end = nullptr;
    long value = std::strtol(cap, &end, 10);
    if (*cap == '\0' || !end || *end != '\0' || value < 1 || value > 1000000)
        throw UsageError("TLCAT_MAX_STRANDS must be a positive integer");
    set_strand_limit(static_cast<int>(value));
}

int run(int argc, char** argv) {
    apply_env_cap();

    CLI::App app{"Exact diagram calculus for the Temperley-Lieb category"};
    app.require_subcommand(1);
    int exit_code = 0;

    struct {
        int m = 0, n = 0;
        std::string output;
    } enum_opts;
    auto* cmd_enum = app.add_subcommand("enum", "list the diagrams with m top and n bottom points");
    cmd_enum->add_option("m", enum_opts.m, "top boundary points")
        ->required()->check(CLI::NonNegativeNumber);
    cmd_enum->add_option("n", enum_opts.n, "bottom boundary points")
        ->required()->check(CLI::NonNegativeNumber);
    cmd_enum->add_option("--output", enum_opts.output, "write to this file instead of stdout");
    cmd_enum->callback([&] {
        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!enum_opts.output.empty()) {
            file.open(enum_opts.output, std::ios::binary);
            if (!file) throw FileError("cannot write " + enum_opts.output);
            out = &file;
        }
        for (const Diagram& diagram : Diagram::enumerate(enum_opts.m, enum_opts.n))
            *out << diagram.encode() << '\n';
    });

    struct {
        std::string lhs, rhs, output;
    } compose_opts;
    auto* cmd_compose = app.add_subcommand("compose", "compose two morphisms, left above right");
    cmd_compose->add_option("f", compose_opts.lhs, "upper morphism JSON file")
        ->required()->check(CLI::ExistingFile);
    cmd_compose->add_option("g", compose_opts.rhs, "lower morphism JSON file")
        ->required()->check(CLI::ExistingFile);
    cmd_compose->add_option("--output", compose_opts.output, "write to this file instead of stdout");
    cmd_compose->callback([&] {
        Morphism f = morphism_from_json(read_file(compose_opts.lhs));
        Morphism g = morphism_from_json(read_file(compose_opts.rhs));
        emit(compose_opts.output, morphism_to_json(Morphism::compose(f, g)));
    });

    struct {
        std::string lhs, rhs, output;
    } tensor_opts;
    auto* cmd_tensor = app.add_subcommand("tensor", "tensor two morphisms side by side");
    cmd_tensor->add_option("f", tensor_opts.lhs, "left morphism JSON file")
        ->required()->check(CLI::ExistingFile);
    cmd_tensor->add_option("g", tensor_opts.rhs, "right morphism JSON file")
        ->required()->check(CLI::ExistingFile);
    cmd_tensor->add_option("--output", tensor_opts.output, "write to this file instead of stdout");
    cmd_tensor->callback([&] {
        Morphism f = morphism_from_json(read_file(tensor_opts.lhs));
        Morphism g = morphism_from_json(read_file(tensor_opts.rhs));
        emit(tensor_opts.output, morphism_to_json(Morphism::tensor(f, g)));
    });

    struct {
        std::string input, output;
    } trace_opts;
    auto* cmd_trace = app.add_subcommand("trace", "Markov trace of an endomorphism");
    cmd_trace->add_option("f", trace_opts.input, "morphism JSON file")
        ->required()->check(CLI::ExistingFile);
    cmd_trace->add_option("--output", trace_opts.output, "write to this file instead of stdout");
    cmd_trace->callback([&] {
        Morphism f = morphism_from_json(read_file(trace_opts.input));
        emit(trace_opts.output, f.markov_trace().str() + "\n");
    });

    struct {
        int level = 0;
        bool pretty = false;
        std::string output;
        BackendOpts backend;
    } jw_opts;
    auto* cmd_jw = app.add_subcommand("jw", "Jones-Wenzl projector on k strands");
    cmd_jw->add_option("k", jw_opts.level, "strand count")
        ->required()->check(CLI::NonNegativeNumber);
    cmd_jw->add_flag("--pretty", jw_opts.pretty,
                     "list coefficients against reduced words instead of JSON");
    cmd_jw->add_option("--output", jw_opts.output, "write to this file instead of stdout");
    attach_backend(cmd_jw, jw_opts.backend);
    cmd_jw->callback([&] {
        Morphism f = jones_wenzl(jw_opts.level, make_backend(jw_opts.backend)).morphism;
        emit(jw_opts.output, jw_opts.pretty ? pretty_terms(f) : morphism_to_json(f));
    });

    auto* cmd_words = app.add_subcommand("words", "the abstract presentation by planar generators");
    cmd_words->require_subcommand(1);

    struct {
        std::string word, output;
    } reduce_opts;
    auto* cmd_reduce = cmd_words->add_subcommand("reduce", "normal form of a word");
    cmd_reduce->add_option("word", reduce_opts.word, "word as 'n: i1 i2 ...'")->required();
    cmd_reduce->add_option("--output", reduce_opts.output, "write to this file instead of stdout");
    cmd_reduce->callback([&] {
        emit(reduce_opts.output, normal_form(Word::parse(reduce_opts.word)).str() + "\n");
    });

    struct {
        int n = 0;
        std::string output;
    } count_opts;
    auto* cmd_count = cmd_words->add_subcommand("count", "number of reduced words on n strands");
    cmd_count->add_option("n", count_opts.n, "strand count")
        ->required()->check(CLI::NonNegativeNumber);
    cmd_count->add_option("--output", count_opts.output, "write to this file instead of stdout");
    cmd_count->callback([&] {
        emit(count_opts.output, std::to_string(enumerate_reduced(count_opts.n).size()) + "\n");
    });

    struct {
        int m = 0, n = 0;
        bool det = false;
        std::string format = "json";
        std::string output;
        BackendOpts backend;
    } gram_opts;
    auto* cmd_gram = app.add_subcommand("gram", "Gram matrix of the diagram basis of Hom(n, m)");
    cmd_gram->add_option("m", gram_opts.m, "top boundary points")
        ->required()->check(CLI::NonNegativeNumber);
    cmd_gram->add_option("n", gram_opts.n, "bottom boundary points")
        ->required()->check(CLI::NonNegativeNumber);
    cmd_gram->add_flag("--det", gram_opts.det, "print the determinant only");
    cmd_gram->add_option("--format", gram_opts.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd_gram->add_option("--output", gram_opts.output, "write to this file instead of stdout");
    attach_backend(cmd_gram, gram_opts.backend);
    cmd_gram->callback([&] {
        GramMatrix g = gram_matrix(gram_opts.m, gram_opts.n, make_backend(gram_opts.backend));
        if (gram_opts.det)
            emit(gram_opts.output, gram_det(g).str() + "\n");
        else
            emit(gram_opts.output,
                 gram_opts.format == "json" ? gram_to_json(g) : gram_to_text(g));
    });

    struct {
        int strands = 0;
        int order = 0;
        std::string output;
    } kernel_opts;
    auto* cmd_kernel = app.add_subcommand(
        "kernel", "basis of the negligible endomorphisms on k strands at a root of unity");
    cmd_kernel->add_option("k", kernel_opts.strands, "strand count")
        ->required()->check(CLI::NonNegativeNumber);
    cmd_kernel->add_option("--cyclotomic", kernel_opts.order, "cyclotomic order N of the field")
        ->required()->check(CLI::PositiveNumber);
    cmd_kernel->add_option("--output", kernel_opts.output, "write to this file instead of stdout");
    cmd_kernel->callback([&] {
        ScalarBackend backend = ScalarBackend::cyclotomic(kernel_opts.order);
        KernelReport report{kernel_opts.strands, kernel_opts.order,
                            negligible_basis(kernel_opts.strands, kernel_opts.strands, backend)};
        emit(kernel_opts.output, kernel_to_json(report));
    });

    struct {
        int left = 0, right = 0, truncate = 0;
        std::string format = "json";
        std::string output;
    } fusion_opts;
    auto* cmd_fusion = app.add_subcommand("fusion", "decompose the product of two simple objects");
    cmd_fusion->add_option("j", fusion_opts.left, "left label")
        ->required()->check(CLI::NonNegativeNumber);
    cmd_fusion->add_option("k", fusion_opts.right, "right label")
        ->required()->check(CLI::NonNegativeNumber);
    cmd_fusion->add_option("--truncate", fusion_opts.truncate, "fuse in the level-l quotient")
        ->check(CLI::PositiveNumber);
    cmd_fusion->add_option("--format", fusion_opts.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd_fusion->add_option("--output", fusion_opts.output, "write to this file instead of stdout");
    cmd_fusion->callback([&] {
        FusionTable table;
        table.left = fusion_opts.left;
        table.right = fusion_opts.right;
        table.truncation = fusion_opts.truncate;
        table.result = fusion_opts.truncate
            ? truncated_fusion(fusion_opts.left, fusion_opts.right, fusion_opts.truncate)
            : clebsch_gordan(fusion_opts.left, fusion_opts.right);
        emit(fusion_opts.output,
             fusion_opts.format == "json" ? fusion_to_json(table) : fusion_to_text(table));
    });

    struct {
        int levels = 0, truncate = 0;
        std::string dot;
    } bratteli_opts;
    auto* cmd_bratteli = app.add_subcommand("bratteli", "inclusion graph of the first N levels");
    cmd_bratteli->add_option("N", bratteli_opts.levels, "number of levels")
        ->required()->check(CLI::NonNegativeNumber);
    cmd_bratteli->add_option("--truncate", bratteli_opts.truncate, "drop labels at and above l")
        ->check(CLI::PositiveNumber);
    cmd_bratteli->add_option("--dot", bratteli_opts.dot, "write DOT output to this file")
        ->required();
    cmd_bratteli->callback([&] {
        write_file(bratteli_opts.dot,
                   bratteli_dot(bratteli(bratteli_opts.levels, bratteli_opts.truncate)));
    });

    struct {
        double d = 0.0;
        int max_strands = 0;
        double tol = 1e-9;
        std::string format = "json";
        std::string output;
    } positivity_opts;
    auto* cmd_positivity = app.add_subcommand(
        "positivity", "scan Gram spectra for a negative eigenvalue at a real loop value");
    cmd_positivity->add_option("--d", positivity_opts.d, "loop value to test")->required();
    cmd_positivity->add_option("--max-strands", positivity_opts.max_strands, "deepest level to scan")
        ->required()->check(CLI::PositiveNumber);
    cmd_positivity->add_option("--tol", positivity_opts.tol, "eigenvalue tolerance");
    cmd_positivity->add_option("--format", positivity_opts.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd_positivity->add_option("--output", positivity_opts.output,
                               "write to this file instead of stdout");
    cmd_positivity->callback([&] {
        PositivityReport report = positivity_scan(positivity_opts.d, positivity_opts.max_strands,
                                                  positivity_opts.tol);
        emit(positivity_opts.output,
             positivity_opts.format == "json" ? positivity_to_json(report)
                                              : positivity_to_text(report));
    });

    struct {
        std::string target;
        unsigned seed = 0;
    } verify_opts;
    auto* cmd_verify = app.add_subcommand("verify", "run the self-verification suites");
    cmd_verify->add_option("target", verify_opts.target, "'all' or one suite name")->required();
    cmd_verify->add_option("--seed", verify_opts.seed, "seed for randomized properties");
    cmd_verify->callback([&] {
        std::vector<SuiteResult> results;
        if (verify_opts.target == "all") {
            results = verify_all(verify_opts.seed);
        } else {
            std::vector<std::string> names = verify_suite_names();
            bool known = false;
            for (const std::string& name : names) known = known || name == verify_opts.target;
            if (!known) {
                std::string valid = "all";
                for (const std::string& name : names) valid += ", " + name;
                throw UsageError("unknown verify target '" + verify_opts.target +
                                 "', expected one of: " + valid);
            }
            results.push_back(verify_suite(verify_opts.target, verify_opts.seed));
        }
        size_t passed = 0, total = 0;
        for (const SuiteResult& suite : results) {
            for (const CheckResult& check : suite.checks) {
                ++total;
                passed += check.passed ? 1 : 0;
                std::cout << (check.passed ? "ok   " : "FAIL ") << suite.suite << '/' << check.name;
                if (!check.passed && !check.detail.empty()) std::cout << ": " << check.detail;
                std::cout << '\n';
            }
        }
        std::cout << "passed " << passed << '/' << total << '\n';
        if (passed != total) exit_code = 3;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const tlcat::Error& e) {
        std::cerr << "error: " << error_name(e) << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
