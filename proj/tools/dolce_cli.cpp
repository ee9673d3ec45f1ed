// Command-line front end for the DOLCE knowledge-base kernel. Talks to the
// shared library through the C API only.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dolce/dolce.h"

namespace {

struct KbFlags {
    std::vector<std::string> strict;
    std::vector<std::string> disable;
    std::vector<std::string> mutations;
    bool add_life_events = false;
    bool skolemize_sums = false;
    bool auto_tl = false;
    std::string taxonomy;
};

void add_kb_flags(CLI::App* cmd, KbFlags& f) {
    cmd->add_option("--strict-labels", f.strict,
                    "enable labels that are off by default (comma separated)")
        ->delimiter(',');
    cmd->add_option("--disable", f.disable, "disable labels (comma separated)")->delimiter(',');
    cmd->add_option("--mutate", f.mutations,
                    "test-harness hook: drop-REL-args / add-REL-args / swap-REL-args");
    cmd->add_flag("--add-life-events", f.add_life_events,
                  "derive one life perdurant per asserted endurant");
    cmd->add_flag("--skolemize-sums", f.skolemize_sums,
                  "create entities for unresolved sum terms");
    cmd->add_flag("--auto-tl", f.auto_tl,
                  "derive a time-location quality for perdurants lacking one");
    cmd->add_option("--taxonomy", f.taxonomy, "taxonomy config file (overrides DOLCE_TAXONOMY)");
}

using OptionsPtr = std::unique_ptr<dolce_options, decltype(&dolce_options_free)>;
using ModelPtr = std::unique_ptr<dolce_model, decltype(&dolce_model_free)>;
using ReportPtr = std::unique_ptr<dolce_report, decltype(&dolce_report_free)>;

OptionsPtr make_options(const KbFlags& f) {
    OptionsPtr opts(dolce_options_new(), dolce_options_free);
    dolce_options_set(opts.get(), "add-life-events", f.add_life_events ? "1" : "0");
    dolce_options_set(opts.get(), "skolemize-sums", f.skolemize_sums ? "1" : "0");
    dolce_options_set(opts.get(), "auto-tl", f.auto_tl ? "1" : "0");
    for (const std::string& l : f.strict) dolce_options_set(opts.get(), "enable-label", l.c_str());
    for (const std::string& l : f.disable) dolce_options_set(opts.get(), "disable-label", l.c_str());
    for (const std::string& m : f.mutations) dolce_options_set(opts.get(), "mutate", m.c_str());
    if (!f.taxonomy.empty()) dolce_options_set(opts.get(), "taxonomy-file", f.taxonomy.c_str());
    return opts;
}

int load_model(const std::string& file, const KbFlags& flags, ModelPtr& model) {
    OptionsPtr opts = make_options(flags);
    dolce_model* raw = nullptr;
    char* error = nullptr;
    dolce_status st = dolce_load_file(file.c_str(), opts.get(), &raw, &error);
    if (st != DOLCE_OK) {
        std::fprintf(stderr, "error: %s\n", error ? error : "load failed");
        dolce_string_free(error);
        return 2;
    }
    model = ModelPtr(raw, dolce_model_free);
    char* warnings = dolce_model_warnings(raw);
    if (warnings && *warnings) std::fputs(warnings, stderr);
    dolce_string_free(warnings);
    return 0;
}

int run_check(const std::string& file, const KbFlags& flags, const std::string& format) {
    ModelPtr model(nullptr, dolce_model_free);
    if (int rc = load_model(file, flags, model)) return rc;
    dolce_report* raw = nullptr;
    if (dolce_check(model.get(), &raw) != DOLCE_OK) {
        std::fprintf(stderr, "error: check failed\n");
        return 2;
    }
    ReportPtr report(raw, dolce_report_free);
    char* text = format == "json" ? dolce_report_json(raw) : dolce_report_text(raw);
    std::fputs(text, stdout);
    dolce_string_free(text);
    return dolce_report_count(raw) == 0 ? 0 : 1;
}

int run_query(const std::string& file, const std::string& pattern, const KbFlags& flags) {
    ModelPtr model(nullptr, dolce_model_free);
    if (int rc = load_model(file, flags, model)) return rc;
    char* lines = nullptr;
    char* error = nullptr;
    if (dolce_query(model.get(), pattern.c_str(), &lines, &error) != DOLCE_OK) {
        std::fprintf(stderr, "error: %s\n", error ? error : "query failed");
        dolce_string_free(error);
        return 2;
    }
    std::fputs(lines, stdout);
    dolce_string_free(lines);
    return 0;
}

int run_explain(const std::string& file, const std::string& label, const KbFlags& flags) {
    ModelPtr model(nullptr, dolce_model_free);
    if (int rc = load_model(file, flags, model)) return rc;
    char* text = dolce_explain(label.c_str());
    if (!text) {
        std::fprintf(stderr, "error: unknown label '%s'\n", label.c_str());
        return 2;
    }
    std::fputs(text, stdout);
    dolce_string_free(text);
    return 0;
}

int run_fixtures() {
    struct Fixture {
        const char* kase;
        const char* file;
        const char* summary;
    };
    static const Fixture fixtures[] = {
        {"case 1", "case1_table.dkb", "composition and constitution of a wooden table"},
        {"case 2", "case2_roles.dkb", "teacher and student roles at class 2C"},
        {"case 3.1", "case3_1_color.dkb", "a flower's color drifting from red to brown"},
        {"case 3.2", "case3_2_speed.dkb", "walking, speeding up and running"},
        {"case 4", "case4_walk.dkb", "turning around on the way to the station"},
        {"case 5", "case5_marriage.dkb", "the evolving concept of marriage"},
    };
    const char* dir = std::getenv("DOLCE_FIXTURES");
    std::string base = dir && *dir ? dir : "cases";
    for (const Fixture& f : fixtures)
        std::printf("%-8s  %s/%s  %s\n", f.kase, base.c_str(), f.file, f.summary);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DOLCE knowledge-base checker"};
    app.require_subcommand(1);

    KbFlags check_flags;
    std::string check_file, check_format = "text";
    CLI::App* check = app.add_subcommand("check", "load a .dkb file and run every enabled check");
    check->add_option("file", check_file, "knowledge base file")->required();
    check->add_option("--format", check_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    add_kb_flags(check, check_flags);

    KbFlags query_flags;
    std::string query_file, query_pattern;
    CLI::App* query = app.add_subcommand("query", "evaluate a pattern, e.g. \"(K ?w T t)\"");
    query->add_option("file", query_file, "knowledge base file")->required();
    query->add_option("pattern", query_pattern, "atom with ?variables")->required();
    add_kb_flags(query, query_flags);

    KbFlags explain_flags;
    std::string explain_file, explain_label;
    CLI::App* explain = app.add_subcommand("explain", "print the formula behind an axiom label");
    explain->add_option("file", explain_file, "knowledge base file")->required();
    explain->add_option("label", explain_label, "axiom label, e.g. Ad17")->required();
    add_kb_flags(explain, explain_flags);

    app.add_subcommand("fixtures", "list the bundled case files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    if (check->parsed()) return run_check(check_file, check_flags, check_format);
    if (query->parsed()) return run_query(query_file, query_pattern, query_flags);
    if (explain->parsed()) return run_explain(explain_file, explain_label, explain_flags);
    return run_fixtures();
}
