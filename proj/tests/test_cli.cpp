#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tlcat/json_io.hpp"
#include "tlcat/morphism.hpp"
#include "tlcat/repn.hpp"
#include "tlcat/scalar.hpp"

using namespace tlcat;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Runs the installed binary through the shell, stderr folded into stdout.
// env holds KEY=VALUE assignments placed before the binary name.
RunResult run_cli(const std::string& args, const std::string& env = "") {
    std::string command = env + (env.empty() ? "" : " ") + TLCAT_BIN + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buffer[4096];
    size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) r.output.append(buffer, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path work_dir() {
    auto dir = std::filesystem::temp_directory_path() / "tlcat_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("enum lists encodings one per line") {
    RunResult r = run_cli("enum 3 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output ==
          "3:3:((()))\n3:3:(()())\n3:3:(())()\n3:3:()(())\n3:3:()()()\n");

    RunResult odd = run_cli("enum 1 2");
    CHECK(odd.exit_code == 0);
    CHECK(odd.output.empty());
}

TEST_CASE("words commands print counts and normal forms") {
    RunResult count = run_cli("words count 8");
    CHECK(count.exit_code == 0);
    CHECK(count.output == "1430\n");

    RunResult reduce = run_cli("words reduce \"4: 1 2 1 3\"");
    CHECK(reduce.exit_code == 0);
    CHECK(reduce.output == "4: d^0; (1..1)(3..3)\n");

    RunResult loop = run_cli("words reduce \"2: 1 1\"");
    CHECK(loop.exit_code == 0);
    CHECK(loop.output == "2: d^1; (1..1)\n");
}

TEST_CASE("jw prints the projector as morphism JSON") {
    RunResult r = run_cli("jw 2 --backend generic");
    CHECK(r.exit_code == 0);
    CHECK(r.output == std::string(R"json({
  "m": 2,
  "n": 2,
  "d": "q^-1 + q",
  "terms": [
    {
      "coeff": "1",
      "diagram": "2:2:(())"
    },
    {
      "coeff": "(-q)/(1 + q^2)",
      "diagram": "2:2:()()"
    }
  ]
}
)json"));
    CHECK(run_cli("jw 2").output == r.output);

    RunResult pretty = run_cli("jw 2 --pretty");
    CHECK(pretty.exit_code == 0);
    CHECK(pretty.output == "1 | 2: d^0;\n(-q)/(1 + q^2) | 2: d^0; (1..1)\n");
}

TEST_CASE("emitted morphisms feed back into compose, tensor and trace") {
    auto dir = work_dir();
    auto f3 = (dir / "f3.json").string();
    RunResult written = run_cli("jw 3 --output " + f3);
    CHECK(written.exit_code == 0);
    CHECK(written.output.empty());

    Morphism f = morphism_from_json(slurp(f3));
    CHECK(f.top_count() == 3);

    RunResult composed = run_cli("compose " + f3 + " " + f3);
    CHECK(composed.exit_code == 0);
    CHECK(morphism_from_json(composed.output).equals(f));

    RunResult tensored = run_cli("tensor " + f3 + " " + f3);
    CHECK(tensored.exit_code == 0);
    Morphism big = morphism_from_json(tensored.output);
    CHECK(big.top_count() == 6);
    CHECK(big.equals(Morphism::tensor(f, f)));

    RunResult traced = run_cli("trace " + f3);
    CHECK(traced.exit_code == 0);
    CHECK(traced.output == "q^-3 + q^-1 + q + q^3\n");
}

TEST_CASE("gram output matches the library matrix") {
    RunResult json = run_cli("gram 2 2");
    CHECK(json.exit_code == 0);
    CHECK(gram_from_json(json.output).equals(gram_matrix(2, 2, ScalarBackend::generic())));

    RunResult text = run_cli("gram 1 3 --format text --backend cyclotomic --order 8");
    CHECK(text.exit_code == 0);
    CHECK(gram_from_text(text.output).equals(gram_matrix(1, 3, ScalarBackend::cyclotomic(8))));

    RunResult det = run_cli("gram 2 2 --det --backend cyclotomic --order 8");
    CHECK(det.exit_code == 0);
    CHECK(det.output == "2 mod Phi_8\n");
}

TEST_CASE("kernel reports the negligible basis at the chosen root") {
    RunResult r = run_cli("kernel 2 --cyclotomic 6");
    CHECK(r.exit_code == 0);
    KernelReport report = kernel_from_json(r.output);
    CHECK(report.strands == 2);
    CHECK(report.order == 6);
    CHECK(report.basis.size() == 1);
    CHECK(report == KernelReport{2, 6, negligible_basis(2, 2, ScalarBackend::cyclotomic(6))});

    RunResult empty = run_cli("kernel 1 --cyclotomic 6");
    CHECK(empty.exit_code == 0);
    CHECK(kernel_from_json(empty.output).basis.empty());
}

TEST_CASE("fusion tables agree with the library decompositions") {
    RunResult json = run_cli("fusion 3 2");
    CHECK(json.exit_code == 0);
    FusionTable expected{3, 2, 0, clebsch_gordan(3, 2)};
    CHECK(fusion_from_json(json.output) == expected);

    RunResult text = run_cli("fusion 2 2 --truncate 4 --format text");
    CHECK(text.exit_code == 0);
    FusionTable truncated{2, 2, 4, truncated_fusion(2, 2, 4)};
    CHECK(fusion_from_text(text.output) == truncated);
}

TEST_CASE("bratteli writes DOT that parses back to the same graph") {
    auto dot = (work_dir() / "b.dot").string();
    RunResult r = run_cli("bratteli 5 --dot " + dot);
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());
    BratteliDiagram parsed = bratteli_from_dot(slurp(dot));
    BratteliDiagram direct = bratteli(5);
    CHECK(parsed.levels == direct.levels);
    CHECK(parsed.edges == direct.edges);

    RunResult truncated = run_cli("bratteli 6 --truncate 3 --dot " + dot);
    CHECK(truncated.exit_code == 0);
    CHECK(bratteli_from_dot(slurp(dot)).edges == bratteli(6, 3).edges);
}

TEST_CASE("positivity report round-trips through both formats") {
    RunResult json = run_cli("positivity --d 2.5 --max-strands 3");
    CHECK(json.exit_code == 0);
    CHECK(positivity_from_json(json.output) == positivity_scan(2.5, 3));

    RunResult text = run_cli("positivity --d 1.5 --max-strands 6 --format text");
    CHECK(text.exit_code == 0);
    PositivityReport report = positivity_from_text(text.output);
    CHECK(report == positivity_scan(1.5, 6));
    CHECK(report.violated_level == 4);
}

TEST_CASE("float backend flags reach the coefficients") {
    RunResult by_d = run_cli("jw 2 --backend float --d 2.5");
    CHECK(by_d.exit_code == 0);
    Morphism f = morphism_from_json(by_d.output);
    CHECK(f.backend().same(ScalarBackend::floating_d(2.5)));

    RunResult by_q = run_cli("jw 2 --backend float --q 2");
    CHECK(by_q.exit_code == 0);
    CHECK(by_q.output == by_d.output);

    RunResult complex_q = run_cli("gram 1 1 --backend float --q \"(0,1)\"");
    CHECK(complex_q.exit_code == 0);
    GramMatrix g = gram_from_json(complex_q.output);
    CHECK(g.entries.at(0).at(0).is_zero());
}

TEST_CASE("verify prints one line per check and a summary") {
    RunResult r = run_cli("verify scalar");
    CHECK(r.exit_code == 0);
    CHECK(r.output ==
          "ok   scalar/field-axioms-rational\n"
          "ok   scalar/field-axioms-cyclotomic\n"
          "ok   scalar/quantum-integer-recurrence\n"
          "ok   scalar/evaluate-at-homomorphism\n"
          "passed 4/4\n");
    CHECK(run_cli("verify scalar --seed 5").exit_code == 0);
}

TEST_CASE("identical invocations emit identical bytes") {
    const char* commands[] = {
        "jw 4",
        "gram 2 2 --format text",
        "fusion 4 3",
        "positivity --d 1.5 --max-strands 5",
        "verify words --seed 3",
    };
    for (const char* command : commands) {
        CAPTURE(command);
        RunResult a = run_cli(command);
        RunResult b = run_cli(command);
        CHECK(a.exit_code == 0);
        CHECK(a.output == b.output);
    }
}

TEST_CASE("usage problems exit 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("enum 3").exit_code == 2);
    CHECK(run_cli("jw -1").exit_code == 2);
    CHECK(run_cli("jw 2 --backend nope").exit_code == 2);
    CHECK(run_cli("jw 2 --order 8").exit_code == 2);
    CHECK(run_cli("jw 2 --backend cyclotomic").exit_code == 2);
    CHECK(run_cli("jw 2 --backend float").exit_code == 2);
    CHECK(run_cli("jw 2 --backend float --d 2 --q 2").exit_code == 2);
    CHECK(run_cli("kernel 2").exit_code == 2);
    CHECK(run_cli("bratteli 4").exit_code == 2);
    CHECK(run_cli("compose /no/such/file.json /other.json").exit_code == 2);
    CHECK(run_cli("verify nothing").exit_code == 2);
}

TEST_CASE("domain errors exit 1 and name the library error") {
    RunResult cap = run_cli("jw 99");
    CHECK(cap.exit_code == 1);
    CHECK(cap.output.find("SizeLimit") != std::string::npos);

    RunResult vanishing = run_cli("jw 3 --backend cyclotomic --order 6");
    CHECK(vanishing.exit_code == 1);
    CHECK(vanishing.output.find("VanishingQuantumInteger") != std::string::npos);
    CHECK(vanishing.output.find("[3]") != std::string::npos);

    RunResult out_of_range = run_cli("words reduce \"2: 9\"");
    CHECK(out_of_range.exit_code == 1);
    CHECK(out_of_range.output.find("IndexOutOfRange") != std::string::npos);

    RunResult malformed = run_cli("words reduce nonsense");
    CHECK(malformed.exit_code == 1);
    CHECK(malformed.output.find("ParseError") != std::string::npos);

    auto not_json = (work_dir() / "plain.txt").string();
    std::ofstream(not_json) << "not a morphism\n";
    RunResult parse = run_cli("trace " + not_json);
    CHECK(parse.exit_code == 1);
    CHECK(parse.output.find("ParseError") != std::string::npos);
}

TEST_CASE("strand cap from the environment applies before any work") {
    CHECK(run_cli("enum 4 4 --output /dev/null").exit_code == 0);

    RunResult blocked = run_cli("enum 4 4", "TLCAT_MAX_STRANDS=3");
    CHECK(blocked.exit_code == 1);
    CHECK(blocked.output.find("SizeLimit") != std::string::npos);

    CHECK(run_cli("enum 4 4 --output /dev/null", "TLCAT_MAX_STRANDS=9").exit_code == 0);

    RunResult bad = run_cli("enum 2 2", "TLCAT_MAX_STRANDS=bogus");
    CHECK(bad.exit_code == 2);
}
