#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dirac/corpus.hpp"
#include "dirac/model.hpp"
#include "dirac/report.hpp"

namespace {

// Exit codes: 0 ok, 1 inconsistent model, 2 parse/validation error,
// 3 resource limit, 4 internal invariant failure.
constexpr int kExitOk = 0;
constexpr int kExitInconsistent = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitInternal = 4;

int run_analyze(const std::string& path, const std::string& stage, const std::string& weak,
                const std::string& order, const std::string& format, const std::string& output,
                int max_iterations, std::size_t term_budget, bool timings) {
    dirac::AnalysisOptions opts;
    if (stage == "primary")
        opts.stage = dirac::Stage::Primary;
    else if (stage == "complete")
        opts.stage = dirac::Stage::Complete;
    else if (stage == "separate")
        opts.stage = dirac::Stage::Separate;
    else
        opts.stage = dirac::Stage::Generator;
    opts.weak = weak == "radical" ? dirac::WeakEqualityMode::Radical
                                  : dirac::WeakEqualityMode::Ideal;
    opts.inner_order = order == "lex" ? dirac::MonomialOrder::Kind::Lex
                                      : dirac::MonomialOrder::Kind::DegRevLex;
    opts.max_iterations = max_iterations;
    if (term_budget > 0)
        opts.budget.max_total_terms = term_budget;

    dirac::ReportOptions ropts;
    ropts.stage_name = stage;
    ropts.order_name = order;
    ropts.weak_name = weak;
    ropts.include_timings = timings;

    dirac::DegenerateModel model = dirac::load_model(path);
    dirac::Analysis analysis = dirac::run_analysis(std::move(model), opts);
    std::string report = format == "text" ? dirac::report_text(analysis, ropts)
                                          : dirac::report_json(analysis, ropts);
    if (output.empty()) {
        std::cout << report;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << output << "\n";
            return kExitInput;
        }
        out << report;
    }
    if (analysis.status == dirac::AnalysisStatus::Inconsistent) {
        std::cerr << "error: dynamical system is inconsistent\n";
        return kExitInconsistent;
    }
    return kExitOk;
}

int run_corpus(const std::string& show) {
    if (!show.empty()) {
        const dirac::CorpusModel* m = dirac::corpus_find(show);
        if (!m) {
            std::cerr << "error: no bundled model named '" << show << "'\n";
            return kExitInput;
        }
        std::cout << m->content;
        return kExitOk;
    }
    for (const dirac::CorpusModel& m : dirac::corpus_models()) {
        dirac::DegenerateModel model = dirac::load_model_text(m.content, m.name);
        std::cout << m.name << ": " << model.dimension() << " coordinates";
        if (model.ring->params()->size() > 0) {
            std::cout << ", parameters";
            for (dirac::VarId p = 0; p < model.ring->params()->size(); ++p) {
                std::cout << " " << model.ring->params()->name(p);
                if (model.ring->param_declared_nonzero(p))
                    std::cout << " (!= 0)";
            }
        }
        std::cout << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirac constraint analysis for polynomial Lagrangian models"};
    app.require_subcommand(1);

    std::string model_path, stage = "all", weak = "ideal", order = "degrevlex",
                format = "json", output;
    int max_iterations = 32;
    std::size_t term_budget = 0;
    bool timings = false;

    CLI::App* analyze = app.add_subcommand("analyze", "analyze a model file");
    analyze->add_option("model", model_path, "model file path")->required();
    analyze->add_option("--stage", stage, "primary|complete|separate|generator|all")
        ->check(CLI::IsMember({"primary", "complete", "separate", "generator", "all"}));
    analyze->add_option("--weak-equality", weak, "ideal|radical")
        ->check(CLI::IsMember({"ideal", "radical"}));
    analyze->add_option("--order", order, "inner monomial order: degrevlex|lex")
        ->check(CLI::IsMember({"degrevlex", "lex"}));
    analyze->add_option("--format", format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    analyze->add_option("--output", output, "write the report to a file");
    analyze->add_option("--max-iterations", max_iterations, "consistency sweep cap");
    analyze->add_option("--term-budget", term_budget, "cumulative term budget for basis runs");
    analyze->add_flag("--timings", timings, "include timings in the JSON report");

    std::string show;
    CLI::App* corpus = app.add_subcommand("corpus", "list bundled models");
    corpus->add_option("--show", show, "print the named bundled model file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("analyze"))
            return run_analyze(model_path, stage, weak, order, format, output, max_iterations,
                               term_budget, timings);
        return run_corpus(show);
    } catch (const dirac::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInput;
    } catch (const dirac::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitInput;
    } catch (const dirac::ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const dirac::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const dirac::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
