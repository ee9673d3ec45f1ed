#include "dolce/dolce.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "engine.hpp"

using namespace dolce;

struct dolce_options {
    Options opts;
    std::string taxonomy_file;
};

struct dolce_model {
    ClosedKB ckb;
};

struct dolce_report {
    std::vector<Violation> violations;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_error(char** error, const std::string& msg) {
    if (error) *error = dup_string(msg);
}

dolce_status load_common(const std::string& text, const std::string& path,
                         const dolce_options* opts, dolce_model** out, char** error) {
    if (!out) return DOLCE_ERR_USAGE;
    *out = nullptr;
    try {
        Taxonomy tax;
        std::string tax_path;
        if (opts && !opts->taxonomy_file.empty()) tax_path = opts->taxonomy_file;
        else if (const char* env = std::getenv("DOLCE_TAXONOMY"); env && *env) tax_path = env;
        if (tax_path.empty()) {
            tax = default_taxonomy();
        } else {
            std::ifstream in(tax_path, std::ios::binary);
            if (!in) {
                set_error(error, "cannot read taxonomy file '" + tax_path + "'");
                return DOLCE_ERR_IO;
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            tax = Taxonomy::from_text(ss.str(), tax_path);
        }
        SourceDocument doc = parse_document(text, path);
        KnowledgeBase kb = build_kb(doc, tax);
        ClosedKB ckb = close_kb(std::move(kb), opts ? opts->opts : Options{});
        *out = new dolce_model{std::move(ckb)};
        return DOLCE_OK;
    } catch (const SyntaxError& e) {
        set_error(error, path + ": " + e.what());
        return DOLCE_ERR_PARSE;
    } catch (const CloseError& e) {
        set_error(error, path + ": " + e.what());
        return DOLCE_ERR_CLOSE;
    } catch (const std::exception& e) {
        set_error(error, e.what());
        return DOLCE_ERR_USAGE;
    }
}

}  // namespace

extern "C" {

dolce_options* dolce_options_new(void) { return new dolce_options{}; }

void dolce_options_free(dolce_options* opts) { delete opts; }

dolce_status dolce_options_set(dolce_options* opts, const char* key, const char* value) {
    if (!opts || !key || !value) return DOLCE_ERR_USAGE;
    std::string k = key, v = value;
    bool on = v == "1" || v == "true";
    if (k == "add-life-events") opts->opts.add_life_events = on;
    else if (k == "skolemize-sums") opts->opts.skolemize_sums = on;
    else if (k == "auto-tl") opts->opts.auto_tl = on;
    else if (k == "enable-label") opts->opts.enable_labels.push_back(v);
    else if (k == "disable-label") opts->opts.disable_labels.push_back(v);
    else if (k == "mutate") opts->opts.mutations.push_back(v);
    else if (k == "taxonomy-file") opts->taxonomy_file = v;
    else return DOLCE_ERR_USAGE;
    return DOLCE_OK;
}

dolce_status dolce_load_file(const char* path, const dolce_options* opts, dolce_model** out,
                             char** error) {
    if (!path) return DOLCE_ERR_USAGE;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        set_error(error, std::string("cannot read '") + path + "'");
        return DOLCE_ERR_IO;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_common(ss.str(), path, opts, out, error);
}

dolce_status dolce_load_string(const char* text, const dolce_options* opts, dolce_model** out,
                               char** error) {
    if (!text) return DOLCE_ERR_USAGE;
    return load_common(text, "<string>", opts, out, error);
}

void dolce_model_free(dolce_model* model) { delete model; }

char* dolce_model_warnings(const dolce_model* model) {
    if (!model) return dup_string("");
    std::string out;
    for (const std::string& w : model->ckb.warnings) {
        out += w;
        out += "\n";
    }
    return dup_string(out);
}

dolce_status dolce_check(const dolce_model* model, dolce_report** out) {
    if (!model || !out) return DOLCE_ERR_USAGE;
    *out = new dolce_report{check_all(model->ckb)};
    return DOLCE_OK;
}

size_t dolce_report_count(const dolce_report* report) {
    return report ? report->violations.size() : 0;
}

const char* dolce_report_label(const dolce_report* report, size_t index) {
    if (!report || index >= report->violations.size()) return nullptr;
    return report->violations[index].label.c_str();
}

char* dolce_report_text(const dolce_report* report) {
    return dup_string(report ? render_text_report(report->violations) : "");
}

char* dolce_report_json(const dolce_report* report) {
    return dup_string(report ? render_json_report(report->violations) : "[]\n");
}

void dolce_report_free(dolce_report* report) { delete report; }

dolce_status dolce_query(const dolce_model* model, const char* pattern, char** out_lines,
                         char** error) {
    if (!model || !pattern || !out_lines) return DOLCE_ERR_USAGE;
    try {
        std::string out;
        for (const std::string& line : run_query(model->ckb, pattern)) {
            out += line;
            out += "\n";
        }
        *out_lines = dup_string(out);
        return DOLCE_OK;
    } catch (const std::exception& e) {
        set_error(error, e.what());
        return DOLCE_ERR_QUERY;
    }
}

char* dolce_explain(const char* label) {
    if (!label) return nullptr;
    const LabelInfo* li = find_label(label);
    if (!li) return nullptr;
    std::string out = li->label + "\n  " + li->formula + "\n  " + li->note + "\n";
    if (!li->is_check) out += "  (definitional; not a registered check)\n";
    else if (!li->default_on) out += "  (off by default; enable with --strict-labels)\n";
    return dup_string(out);
}

char* dolce_labels(void) {
    std::string out;
    for (const LabelInfo& li : label_registry()) {
        out += li.label;
        out += "\n";
    }
    return dup_string(out);
}

const char* dolce_default_taxonomy(void) { return default_taxonomy_text().c_str(); }

void dolce_string_free(char* s) { std::free(s); }

}  // extern "C"
