#include "acp/clone_detect.hpp"
#include "acp/metrics.hpp"
#include "acp/source_model.hpp"
#include "acp/workspace.hpp"

#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace {

namespace fs = std::filesystem;

const char* const kStatements[] = {
    "total += values[i];",
    "if (count > limit) {\n            count = 0;\n        }",
    "for (int k = 0; k < size; k++) {\n            sum += k * scale;\n        }",
    "log(\"step\" + count);",
    "count++;",
    "double ratio = total / (double) size;",
};

/// Deterministic Java class with `methods` methods of two to eight statements.
std::string generated_class(const std::string& name, int methods, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> length(2, 8);
    std::uniform_int_distribution<std::size_t> pick(0, std::size(kStatements) - 1);
    std::string text = "public class " + name + " {\n    private int count;\n    private int limit;\n\n";
    for (int m = 0; m < methods; ++m) {
        text += "    void m" + std::to_string(m) + "(int[] values, int size, int scale) {\n";
        text += "        int total = 0;\n        int sum = 0;\n        int i = 0;\n";
        const int n = length(rng);
        for (int s = 0; s < n; ++s) {
            text += "        " + std::string(kStatements[pick(rng)]) + "\n";
        }
        text += "    }\n\n";
    }
    return text + "}\n";
}

std::vector<const acp::MethodUnit*> pointers(const acp::FileIndex& file)
{
    std::vector<const acp::MethodUnit*> out;
    for (const auto& m : file.methods) {
        out.push_back(&m);
    }
    return out;
}

void BM_IndexFile(benchmark::State& state)
{
    const std::string text = generated_class("Gen", static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(acp::index_file(text, "Gen.java"));
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_IndexFile)->Arg(10)->Arg(100)->Arg(1000);

void BM_FindDuplicates(benchmark::State& state)
{
    const acp::FileIndex file = acp::index_file(generated_class("Gen", static_cast<int>(state.range(0)), 2), "Gen.java");
    const auto methods = pointers(file);
    const acp::Fragment fragment =
        acp::validate_fragment("for (int k = 0; k < size; k++) {\n    sum += k * scale;\n}\ncount++;");
    for (auto _ : state) {
        benchmark::DoNotOptimize(acp::find_duplicates(fragment, methods, 0.8));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * methods.size()));
}
BENCHMARK(BM_FindDuplicates)->Arg(10)->Arg(100)->Arg(1000);

void BM_BuildDistributions(benchmark::State& state)
{
    const acp::FileIndex file = acp::index_file(generated_class("Gen", static_cast<int>(state.range(0)), 3), "Gen.java");
    const auto methods = pointers(file);
    const acp::KeywordSet keywords = acp::KeywordSet::all();
    for (auto _ : state) {
        benchmark::DoNotOptimize(acp::build_distributions(methods, keywords));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * methods.size()));
}
BENCHMARK(BM_BuildDistributions)->Arg(10)->Arg(100)->Arg(1000);

void BM_OpenProject(benchmark::State& state)
{
    const fs::path root = fs::temp_directory_path() / "acp_bench_project";
    fs::remove_all(root);
    fs::create_directories(root / "src");
    const int files = static_cast<int>(state.range(0));
    for (int f = 0; f < files; ++f) {
        const std::string name = "Gen" + std::to_string(f);
        std::ofstream(root / "src" / (name + ".java")) << generated_class(name, 20, static_cast<unsigned>(f));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(acp::ProjectSession::open(root));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * files * 20));
    fs::remove_all(root);
}
BENCHMARK(BM_OpenProject)->Arg(5)->Arg(50)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
