#include "cadbench/mutation.hpp"

#include "cadbench/brep_model.hpp"

#include <fstream>
#include <random>

namespace cadbench {

using json = nlohmann::ordered_json;
namespace sc = cadbench::script;

const char* to_string(MutationOperatorKind k) {
    switch (k) {
    case MutationOperatorKind::numeric_literal_scale: return "numeric-literal-scale";
    case MutationOperatorKind::feature_deletion: return "feature-deletion";
    case MutationOperatorKind::boolean_op_substitution: return "boolean-op-substitution";
    case MutationOperatorKind::parameter_swap: return "parameter-swap";
    default: return "placement-shift";
    }
}

namespace {

bool is_boolean_callee(const std::string& name) {
    return name == "union" || name == "difference" || name == "intersection";
}

bool is_primitive_callee(const std::string& name) {
    return name == "box" || name == "cylinder" || name == "sphere" || name == "cone";
}

struct Sites {
    std::vector<sc::ExprPtr> literals;         // number literals
    std::vector<sc::ExprPtr> booleans;         // boolean op calls
    std::vector<sc::ExprPtr> primitives;       // primitive constructor calls
    std::vector<sc::StmtPtr> shape_lets;       // let statements binding shapes
};

Sites collect_sites(sc::Program& prog) {
    Sites s;
    sc::visit_exprs(prog, [&](sc::ExprPtr& e) {
        switch (e->kind) {
        case sc::Expr::Kind::number:
            s.literals.push_back(e);
            break;
        case sc::Expr::Kind::call:
            if (is_boolean_callee(e->text)) s.booleans.push_back(e);
            if (is_primitive_callee(e->text)) s.primitives.push_back(e);
            break;
        default:
            break;
        }
    });
    for (auto& st : prog.stmts) {
        if (st->kind != sc::Stmt::Kind::let || !st->value) continue;
        const auto k = st->value->kind;
        if (k == sc::Expr::Kind::call || k == sc::Expr::Kind::method) s.shape_lets.push_back(st);
    }
    return s;
}

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

std::vector<Mutant> deterministic_mutants(const CadProgram& reference, int k, std::uint64_t seed) {
    std::vector<Mutant> out;
    std::mt19937_64 rng(seed);
    const MutationOperatorKind catalog[] = {
        MutationOperatorKind::numeric_literal_scale, MutationOperatorKind::feature_deletion,
        MutationOperatorKind::boolean_op_substitution, MutationOperatorKind::parameter_swap,
        MutationOperatorKind::placement_shift};
    int usage[5] = {0, 0, 0, 0, 0};

    for (int i = 0; i < k; ++i) {
        const int op_idx = i % 5;
        const MutationOperatorKind op = catalog[op_idx];
        const int use = usage[op_idx]++;

        sc::Program prog = sc::parse(reference.source);
        Sites sites = collect_sites(prog);
        Mutant m;
        m.operator_id = to_string(op);
        m.program.dialect = reference.dialect;
        m.program.origin = CadProgram::Origin::mutant;

        switch (op) {
        case MutationOperatorKind::numeric_literal_scale: {
            if (sites.literals.empty()) continue;
            const size_t site = rng() % sites.literals.size();
            const double factor = (rng() % 2 == 0) ? 0.5 : 2.0;
            auto& lit = sites.literals[(site + use) % sites.literals.size()];
            const double old = lit->number;
            lit->number = old * factor;
            m.description = "violates the stated dimensions: numeric literal " + fmt_num(old) +
                            " scaled to " + fmt_num(lit->number);
            break;
        }
        case MutationOperatorKind::feature_deletion: {
            if (sites.booleans.empty()) continue;
            auto& call = sites.booleans[size_t(use) % sites.booleans.size()];
            if (call->args.size() <= 2) {
                // difference(a, b) → a: replace the call with its first arg.
                *call = *call->args[0];
            } else {
                m.description = "violates the feature set: removed the shape passed as argument " +
                                std::to_string(call->args.size()) + " of " + call->text;
                call->args.pop_back();
            }
            if (m.description.empty()) {
                m.description = "violates the feature set: a boolean feature step was removed";
            }
            break;
        }
        case MutationOperatorKind::boolean_op_substitution: {
            if (sites.booleans.empty()) continue;
            auto& call = sites.booleans[size_t(use) % sites.booleans.size()];
            const std::string old = call->text;
            call->text = old == "difference" ? "union" : "difference";
            m.description = "violates the construction: boolean " + old + " replaced by " +
                            call->text;
            break;
        }
        case MutationOperatorKind::parameter_swap: {
            if (sites.primitives.empty()) continue;
            auto& call = sites.primitives[size_t(use) % sites.primitives.size()];
            if (call->args.size() < 2) continue;
            std::swap(call->args[0], call->args[1]);
            m.description = "violates the stated proportions: first two arguments of " +
                            call->text + " swapped";
            break;
        }
        case MutationOperatorKind::placement_shift: {
            if (sites.shape_lets.empty()) continue;
            auto& st = sites.shape_lets[size_t(use) % sites.shape_lets.size()];
            static const double offsets[] = {2.0, -2.0, 3.0, -3.0};
            const double dx = offsets[rng() % 4];
            const double dy = offsets[rng() % 4];
            auto call = std::make_shared<sc::Expr>();
            call->kind = sc::Expr::Kind::method;
            call->text = "translate";
            call->args.push_back(st->value);
            for (double v : {dx, dy, 0.0}) {
                auto lit = std::make_shared<sc::Expr>();
                lit->kind = sc::Expr::Kind::number;
                lit->number = v;
                call->args.push_back(lit);
            }
            st->value = call;
            m.description = "violates the stated placement: '" + st->name + "' shifted by (" +
                            fmt_num(dx) + ", " + fmt_num(dy) + ", 0)";
            break;
        }
        }
        if (m.description.empty()) continue;
        m.program.source = sc::print(prog);
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<Mutant> generate_mutants(const std::string& prompt, const CadProgram& reference,
                                     Planner* planner, int k, std::uint64_t seed) {
    if (planner == nullptr) return deterministic_mutants(reference, k, seed);

    PlannerRequest req;
    req.role = PlannerRole::mutate;
    ContextOptions opts;
    opts.skill_doc = true;
    req.context_docs = build_context(PlannerRole::mutate, opts);
    req.prompt =
        "Produce " + std::to_string(k) +
        " mutated variants of the reference program below. Each mutant must execute and must "
        "deliberately violate at least one geometric requirement of the design prompt; pair each "
        "with a description disambiguating the violation (e.g. \"violates the requirement that "
        "the cutout is centered\"). Reply with {\"mutants\":[{\"source\",\"description\"}]}.\n\n"
        "Design prompt: " +
        prompt + "\n\nReference program:\n" + reference.source;
    const PlannerResponse resp = planner->complete(req);
    if (resp.malformed || !resp.artifacts.contains("mutants")) {
        throw PlannerError("mutate: planner returned no usable mutants payload");
    }
    std::vector<Mutant> out;
    for (const auto& mj : resp.artifacts["mutants"]) {
        Mutant m;
        m.program.source = mj.value("source", "");
        m.program.dialect = reference.dialect;
        m.program.origin = CadProgram::Origin::mutant;
        m.description = mj.value("description", "");
        m.operator_id = "planner";
        if (m.program.source.empty() || m.description.empty()) continue;
        out.push_back(std::move(m));
    }
    if (out.empty()) throw PlannerError("mutate: planner produced an empty mutant list");
    return out;
}

std::optional<Mutant> repair_mutant(Mutant candidate, const Executor& ex, Planner* planner,
                                    int max_iters) {
    ExecutionResult result = ex.execute_program(candidate.program);
    if (result.status == ExecStatus::ok) return candidate;
    if (planner == nullptr) return std::nullopt;

    std::vector<std::string> history;
    for (int iter = 0; iter < max_iters; ++iter) {
        PlannerRequest req;
        req.role = PlannerRole::repair;
        ContextOptions opts;
        opts.skill_doc = true;
        req.context_docs = build_context(PlannerRole::repair, opts);
        req.prompt =
            "The following mutated program fails to execute. Repair it so it runs while keeping "
            "the mutation's intent: " +
            candidate.description +
            "\nReply with {\"source\": \"...\"}.\n\nProgram:\n" + candidate.program.source;
        req.observations = {std::string(to_string(result.status)) + ": " + result.trace};
        req.history = history;
        PlannerResponse resp;
        try {
            resp = planner->complete(req);
        } catch (const PlannerError&) {
            return std::nullopt;
        }
        if (resp.malformed || !resp.artifacts.contains("source")) {
            history.push_back("revision was malformed");
            continue;
        }
        candidate.program.source = resp.artifacts["source"].get<std::string>();
        result = ex.execute_program(candidate.program);
        if (result.status == ExecStatus::ok) return candidate;
        history.push_back("revision still failing: " + result.trace);
    }
    return std::nullopt;
}

std::vector<FilteredMutant> filter_mutants(const std::vector<Mutant>& candidates,
                                           const BRepModel& reference_model, const Executor& ex,
                                           double iou_min, double iou_max, int resolution) {
    if (!(iou_min >= 0.0 && iou_min < iou_max && iou_max <= 1.0)) {
        throw std::invalid_argument("filter_mutants: require 0 <= iou_min < iou_max <= 1");
    }
    std::vector<FilteredMutant> out;
    for (const auto& c : candidates) {
        const ExecutionResult r = ex.execute_program(c.program);
        if (r.status != ExecStatus::ok || !r.model) continue;
        double v = 0.0;
        try {
            v = iou(*r.model, reference_model, resolution);
        } catch (const KernelError&) {
            continue;  // degenerate mutants (no material) cannot be banded
        }
        if (v < iou_min || v > iou_max) continue;
        FilteredMutant fm{c, *r.model};
        fm.mutant.iou_vs_reference = v;
        out.push_back(std::move(fm));
    }
    return out;
}

void save_mutants(const std::filesystem::path& store_dir, const std::string& sample_id,
                  const std::vector<Mutant>& mutants) {
    const auto dir = store_dir / sample_id;
    std::filesystem::create_directories(dir);
    for (size_t i = 0; i < mutants.size(); ++i) {
        json j;
        j["source"] = mutants[i].program.source;
        j["description"] = mutants[i].description;
        j["operator"] = mutants[i].operator_id;
        j["iou"] = mutants[i].iou_vs_reference;
        std::ofstream f(dir / ("mutant-" + std::to_string(i) + ".json"));
        f << j.dump(2) << "\n";
    }
}

std::vector<Mutant> load_mutants(const std::filesystem::path& store_dir,
                                 const std::string& sample_id) {
    std::vector<Mutant> out;
    const auto dir = store_dir / sample_id;
    if (!std::filesystem::exists(dir)) return out;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
        std::ifstream f(p);
        json j;
        f >> j;
        Mutant m;
        m.program.source = j.value("source", "");
        m.program.origin = CadProgram::Origin::mutant;
        m.description = j.value("description", "");
        m.operator_id = j.value("operator", "");
        m.iou_vs_reference = j.value("iou", -1.0);
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace cadbench
