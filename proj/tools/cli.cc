#include "cli.hh"

#include <lifts/canonical.hh>
#include <lifts/duality.hh>
#include <lifts/errors.hh>
#include <lifts/family.hh>
#include <lifts/fpdecide.hh>
#include <lifts/fvreduce.hh>
#include <lifts/homsearch.hh>
#include <lifts/operations.hh>
#include <lifts/shape.hh>
#include <lifts/snp.hh>
#include <lifts/sparse.hh>
#include <lifts/text_format.hh>

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <ostream>

namespace lifts::cli
{
    namespace
    {
        using json = nlohmann::json;

        auto structures_document(const std::vector<Structure> & structures, const std::string & prefix) -> std::string
        {
            if (structures.empty())
                return "";
            Document doc;
            doc.signatures.emplace_back("S", structures.front().signature_ptr());
            for (std::size_t i = 0; i < structures.size(); ++i)
                doc.structures.emplace_back(prefix + std::to_string(i + 1), structures[i]);
            return write_document(doc);
        }

        auto structure_list_json(const std::vector<Structure> & structures, const std::string & prefix) -> json
        {
            json list = json::array();
            for (std::size_t i = 0; i < structures.size(); ++i)
                list.push_back(write_standalone(structures[i], prefix + std::to_string(i + 1)));
            return list;
        }

        auto load_structure(const std::string & path) -> Structure { return parse_structure(read_file(path)); }

        auto load_structures(const std::string & path) -> std::vector<Structure>
        {
            auto doc = parse_document(read_file(path));
            std::vector<Structure> out;
            for (auto & [name, s] : doc.structures)
                out.push_back(s);
            if (out.empty())
                throw ParseError("no structure in " + path, 1, 1);
            return out;
        }

        auto load_family(const std::string & path) -> PatternFamily { return parse_family(read_file(path)); }

        auto bound_to(const Structure & s, const SignaturePtr & sig, std::string_view what) -> Structure
        {
            require_same_signature(sig, s.signature_ptr(), what);
            return rebind(s, sig);
        }

        auto map_text(const Structure & source, const Structure & target, const std::vector<Element> & map)
            -> std::pair<std::string, json>
        {
            std::string text;
            json object = json::object();
            for (Element e = 0; e < source.size(); ++e) {
                text += "  " + source.element_name(e) + " -> " + target.element_name(map[e]) + "\n";
                object[source.element_name(e)] = target.element_name(map[e]);
            }
            return {text, object};
        }

        auto kind_from(const std::string & text) -> HomKind
        {
            auto kind = parse_hom_kind(text);
            if (! kind)
                throw Error("unknown homomorphism mode '" + text + "'");
            return *kind;
        }

        struct HomArgs
        {
            std::string source, target, mode;
        };

        auto cmd_hom(const HomArgs & args) -> CommandResult
        {
            auto doc = parse_document(read_file(args.source));
            if (doc.structures.size() != 1)
                throw ParseError(args.source + " must hold exactly one structure", 1, 1);
            auto & source = doc.structures.front().second;
            auto target = bound_to(load_structure(args.target), source.signature_ptr(), "hom");

            HomMode mode{args.mode.empty() ? doc.mode.value_or(HomKind::plain) : kind_from(args.mode)};
            for (auto & c : doc.constraints)
                if (c.structure == doc.structures.front().first)
                    mode.partial = c.partial;

            CommandResult r;
            auto h = hom_exists(source, target, mode);
            r.machine["mode"] = std::string(to_string(mode.kind));
            r.machine["exists"] = h.has_value();
            if (! h) {
                r.exit_code = no;
                r.human = "no " + std::string(to_string(mode.kind)) + " homomorphism\n";
                return r;
            }
            auto [text, object] = map_text(source, target, h->map);
            r.human = "yes\n" + text;
            r.machine["map"] = object;
            return r;
        }

        auto cmd_core(const std::string & path) -> CommandResult
        {
            auto s = load_structure(path);
            auto c = core_of(s);
            CommandResult r;
            r.human = write_standalone(c, "core");
            r.machine["size"] = c.size();
            r.machine["is_core"] = c.size() == s.size();
            r.machine["core"] = r.human;
            return r;
        }

        auto cmd_girth(const std::string & path) -> CommandResult
        {
            auto s = load_structure(path);
            CommandResult r;
            auto c = shortest_cycle(s);
            if (! c) {
                r.human = "none (forest)\n";
                r.machine["girth"] = nullptr;
                return r;
            }
            r.human = std::to_string(c->length()) + "\n" + describe(*c, s) + "\n";
            r.machine["girth"] = c->length();
            r.machine["cycle"] = describe(*c, s);
            return r;
        }

        auto cmd_blocks(const std::string & path) -> CommandResult
        {
            auto s = load_structure(path);
            CommandResult r;
            r.machine["blocks"] = json::array();
            for (auto & piece : biconnected_components(s)) {
                std::vector<std::string> names;
                for (auto e : piece.elements)
                    names.push_back(s.element_name(e));
                std::string line = is_trivial_block(piece) ? "trivial {" : "block {";
                for (std::size_t i = 0; i < names.size(); ++i)
                    line += (i ? ", " : " ") + names[i];
                r.human += line + " } tuples " + std::to_string(piece.structure.tuple_count()) + "\n";
                r.machine["blocks"].push_back(
                    {{"elements", names}, {"trivial", is_trivial_block(piece)}, {"tuples", piece.structure.tuple_count()}});
            }
            return r;
        }

        auto cmd_dual(const std::string & path, unsigned max_elements) -> CommandResult
        {
            auto obstructions = load_structures(path);
            auto sig = obstructions.front().signature_ptr();
            for (auto & o : obstructions)
                o = bound_to(o, sig, "dual");
            DualityLimits limits;
            limits.max_dual_elements = max_elements;

            CommandResult r;
            std::vector<Structure> templates;
            try {
                if (obstructions.size() == 1 && obstructions.front().size() > 0 && is_connected(obstructions.front()))
                    templates = {tree_dual(obstructions.front(), limits)};
                else
                    templates = forest_family_duals(sig, obstructions, limits);
            }
            catch (const PreconditionViolated & e) {
                r.exit_code = no;
                r.human = std::string("no finite duality: ") + e.what() + "\n";
                r.machine["note"] = e.what();
                r.machine["templates"] = json::array();
                return r;
            }
            r.human = structures_document(templates, "D");
            if (templates.empty())
                r.human = "no templates (an obstruction maps into every structure)\n";
            r.machine["templates"] = structure_list_json(templates, "D");
            return r;
        }

        auto cmd_fp_decide(const std::string & path, const FpLimits & limits) -> CommandResult
        {
            auto family = load_family(path);
            auto outcome = decide_finite_union_csp(family, limits);
            CommandResult r;
            r.machine["verdict"] = to_string(outcome.verdict);
            r.machine["note"] = outcome.note;
            r.human = to_string(outcome.verdict) + "\n";
            if (! outcome.note.empty())
                r.human += "# " + outcome.note + "\n";
            if (outcome.verdict == Verdict::not_finite_union) {
                r.exit_code = no;
                if (outcome.witness) {
                    auto & w = outcome.witness->carrier();
                    auto cycle = shortest_cycle(core_of(rebind(shadow(*outcome.witness), family.input_signature())));
                    r.human += write_standalone(w, "witness");
                    r.machine["witness"] = write_standalone(w, "witness");
                    if (cycle)
                        r.machine["cycle_length"] = cycle->length();
                }
                return r;
            }
            r.machine["templates_known"] = outcome.templates_known;
            if (outcome.templates_known) {
                r.human += structures_document(outcome.templates, "D");
                r.machine["templates"] = structure_list_json(outcome.templates, "D");
            }
            return r;
        }

        auto cmd_fp_member(const std::string & family_path, const std::string & input_path, const FpLimits & limits)
            -> CommandResult
        {
            auto family = load_family(family_path);
            auto a = bound_to(load_structure(input_path), family.input_signature(), "fp-member");
            auto lift = fp_membership(a, family, limits);
            CommandResult r;
            r.machine["member"] = lift.has_value();
            if (! lift) {
                r.exit_code = no;
                r.human = "no: every partition lift admits a pattern\n";
                return r;
            }
            r.human = "yes\n" + write_standalone(lift->carrier(), "lift");
            r.machine["lift"] = write_standalone(lift->carrier(), "lift");
            return r;
        }

        auto cmd_snp_compile(const std::string & path, const std::string & category) -> CommandResult
        {
            auto phi = parse_snp(read_file(path));
            CommandResult r;
            r.machine["category"] = category;
            try {
                PatternFamily family;
                if (category == "general")
                    family = to_lifts_general(phi);
                else if (category == "injective")
                    family = to_lifts_injective(phi);
                else if (category == "full")
                    family = to_lifts_full(phi);
                else
                    throw Error("unknown category '" + category + "'");
                r.human = write_family(family);
                r.machine["family"] = r.human;
                r.machine["patterns"] = family.patterns.size();
            }
            catch (const RestrictionViolation & e) {
                r.exit_code = no;
                r.human = std::string("restriction violated: ") + e.what() + "\n";
                r.machine["violation"] = e.what();
            }
            return r;
        }

        auto cmd_snp_eval(const std::string & formula_path, const std::string & input_path) -> CommandResult
        {
            auto phi = parse_snp(read_file(formula_path));
            auto a = bound_to(load_structure(input_path), phi.input, "snp-eval");
            bool holds = eval_snp(phi, a);
            CommandResult r;
            r.exit_code = holds ? yes : no;
            r.human = holds ? "true\n" : "false\n";
            r.machine["holds"] = holds;
            return r;
        }

        struct FvArgs
        {
            std::string family, input, beta;
        };

        auto cmd_fv_reduce(const FvArgs & args, const FpLimits & limits) -> CommandResult
        {
            auto family = load_family(args.family);
            CommandResult r;
            if (! args.beta.empty()) {
                auto basis = build_basis(family);
                auto b = bound_to(load_structure(args.beta), basis.beta, "fv-reduce");
                auto image = reduce_backward(b, family, basis);
                r.human = write_standalone(image, "theta");
                r.machine["theta"] = r.human;
                bool member = fp_membership(image, family, limits).has_value();
                r.machine["member"] = member;
                r.exit_code = member ? yes : no;
                return r;
            }

            auto a = bound_to(load_structure(args.input), family.input_signature(), "fv-reduce");
            auto reduction = reduce_forward(a, family, limits);
            bool member = fp_membership(reduction.image, reduction.gprime, limits).has_value();
            r.exit_code = member ? yes : no;
            r.human = std::string(member ? "yes" : "no") + "\n" + write_standalone(reduction.image, "psi") +
                write_family(reduction.gprime);
            r.machine["member"] = member;
            r.machine["psi"] = write_standalone(reduction.image, "psi");
            r.machine["gprime"] = write_family(reduction.gprime);
            r.machine["girth_threshold"] = girth_threshold(family);
            r.machine["templates_known"] = reduction.templates_known;
            if (reduction.templates_known) {
                r.human += structures_document(reduction.templates, "D");
                r.machine["templates"] = structure_list_json(reduction.templates, "D");
            }
            else
                r.machine["note"] = reduction.note;
            return r;
        }

        auto cmd_sparse(const std::string & path, SparseParams params) -> CommandResult
        {
            auto a = load_structure(path);
            CommandResult r;
            r.machine["seed"] = params.seed;
            try {
                auto result = sparse_replace(a, params);
                r.human = write_standalone(result.structure, "sparse");
                r.machine["structure"] = r.human;
                r.machine["attempt"] = result.attempt;
                r.machine["size"] = result.structure.size();
                r.machine["exhaustive"] = result.exhaustive;
                json projection = json::array();
                for (auto e : result.projection)
                    projection.push_back(a.element_name(e));
                r.machine["projection"] = projection;
            }
            catch (const SparseAttemptsExhausted & e) {
                r.exit_code = no;
                r.human = std::string(e.what()) + "\n";
                r.machine["failure"] = e.what();
                r.machine["best"] = write_standalone(e.best(), "best");
            }
            return r;
        }

        struct VerifyArgs
        {
            std::string kind, first, second;
            unsigned size = 4, k = 2, ell = 3;
        };

        auto cmd_verify(const VerifyArgs & args, const FpLimits & limits) -> CommandResult
        {
            CommandResult r;
            std::optional<Structure> counterexample;
            bool holds = false;
            if (args.kind == "duality") {
                auto obstructions = load_structures(args.first);
                auto sig = obstructions.front().signature_ptr();
                std::vector<Structure> templates;
                for (auto & t : load_structures(args.second))
                    templates.push_back(bound_to(t, sig, "verify"));
                for (auto & o : obstructions)
                    o = bound_to(o, sig, "verify");
                auto check = verify_duality(sig, obstructions, templates, args.size);
                holds = check.holds;
                counterexample = check.counterexample;
            }
            else if (args.kind == "shadow") {
                auto family = load_family(args.first);
                std::vector<Structure> templates;
                for (auto & t : load_structures(args.second))
                    templates.push_back(bound_to(t, family.input_signature(), "verify"));
                auto check = verify_shadow_duality(family, templates, args.size, limits);
                holds = check.holds;
                counterexample = check.counterexample;
            }
            else if (args.kind == "sparse") {
                auto a = load_structure(args.first);
                auto b = bound_to(load_structure(args.second), a.signature_ptr(), "verify");
                auto check = verify_sparse(a, b, args.k, args.ell);
                holds = check.holds;
                counterexample = check.counterexample;
                if (! holds)
                    r.machine["failure"] = check.failure;
            }
            else
                throw Error("unknown verification '" + args.kind + "' (duality, shadow, sparse)");

            r.exit_code = holds ? yes : no;
            r.machine["holds"] = holds;
            r.human = holds ? "holds\n" : "fails\n";
            if (counterexample) {
                r.human += write_standalone(*counterexample, "counterexample");
                r.machine["counterexample"] = write_standalone(*counterexample, "counterexample");
            }
            return r;
        }
    }

    auto run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
    {
        CLI::App app{"Forbidden lifts, dualities and SNP compilation toolkit", "lifts"};
        app.require_subcommand(1);
        std::string format = "human";
        std::uint64_t seed = 0;
        app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "machine"}));
        app.add_option("--seed", seed, "Seed for randomized commands");

        FpLimits limits;
        auto add_limits = [&](CLI::App * sub) {
            sub->add_option("--max-image-elements", limits.max_image_elements, "Largest pattern closed under images");
            sub->add_option("--max-dual-elements", limits.duality.max_dual_elements, "Cap on dual sizes");
            sub->add_option("--max-search-bits", limits.max_search_bits, "log2 cap on explored colourings");
        };

        std::function<CommandResult()> action;

        HomArgs hom;
        auto sub = app.add_subcommand("hom", "Search for a homomorphism between two structures");
        sub->add_option("source", hom.source)->required();
        sub->add_option("target", hom.target)->required();
        sub->add_option("--mode", hom.mode, "plain, injective or full (default: the file's mode line, else plain)");
        sub->callback([&] { action = [&] { return cmd_hom(hom); }; });

        std::string path, second;
        sub = app.add_subcommand("core", "Compute the core of a structure");
        sub->add_option("structure", path)->required();
        sub->callback([&] { action = [&] { return cmd_core(path); }; });

        sub = app.add_subcommand("girth", "Length of a shortest cycle");
        sub->add_option("structure", path)->required();
        sub->callback([&] { action = [&] { return cmd_girth(path); }; });

        sub = app.add_subcommand("blocks", "Biconnected components");
        sub->add_option("structure", path)->required();
        sub->callback([&] { action = [&] { return cmd_blocks(path); }; });

        unsigned max_dual = DualityLimits{}.max_dual_elements;
        sub = app.add_subcommand("dual", "Duals of a tree or of a forest family");
        sub->add_option("obstructions", path)->required();
        sub->add_option("--max-dual-elements", max_dual, "Cap on dual sizes");
        sub->callback([&] { action = [&] { return cmd_dual(path, max_dual); }; });

        sub = app.add_subcommand("fp-decide", "Decide whether a monadic pattern family is a finite union of CSPs");
        sub->add_option("family", path)->required();
        add_limits(sub);
        sub->callback([&] { action = [&] { return cmd_fp_decide(path, limits); }; });

        sub = app.add_subcommand("fp-member", "Whether a structure has a lift avoiding every pattern");
        sub->add_option("family", path)->required();
        sub->add_option("structure", second)->required();
        add_limits(sub);
        sub->callback([&] { action = [&] { return cmd_fp_member(path, second, limits); }; });

        std::string category = "general";
        sub = app.add_subcommand("snp-compile", "Translate an SNP formula into a pattern family");
        sub->add_option("formula", path)->required();
        sub->add_option("--category", category, "general, injective or full")
            ->check(CLI::IsMember({"general", "injective", "full"}));
        sub->callback([&] { action = [&] { return cmd_snp_compile(path, category); }; });

        sub = app.add_subcommand("snp-eval", "Evaluate an SNP formula on a structure");
        sub->add_option("formula", path)->required();
        sub->add_option("structure", second)->required();
        sub->callback([&] { action = [&] { return cmd_snp_eval(path, second); }; });

        FvArgs fv;
        sub = app.add_subcommand("fv-reduce", "Reduce a monadic family to forest patterns over block symbols");
        sub->add_option("family", fv.family)->required();
        sub->add_option("structure", fv.input, "Input structure for the forward direction");
        sub->add_option("--backward", fv.beta, "A block-symbol structure to map back");
        add_limits(sub);
        sub->callback([&] {
            if (fv.input.empty() == fv.beta.empty())
                throw CLI::ValidationError("fv-reduce", "give either a structure or --backward");
            action = [&] { return cmd_fv_reduce(fv, limits); };
        });

        SparseParams sparse;
        sub = app.add_subcommand("sparse", "Replace a structure by a high-girth one with the same small targets");
        sub->add_option("structure", path)->required();
        sub->add_option("--k", sparse.k, "Target size bound")->check(CLI::PositiveNumber);
        sub->add_option("--ell", sparse.ell, "Girth bound")->check(CLI::Range(2u, 1u << 16));
        sub->add_option("--fiber-size", sparse.fiber_size, "Copies per element (0: 16 * |A|)");
        sub->add_option("--density", sparse.density, "Tuples per copy and tuple (0: ell * |A| / fiber size)");
        sub->add_option("--attempts", sparse.max_attempts, "Maximum attempts")->check(CLI::PositiveNumber);
        sub->add_option("--max-size", sparse.max_size, "Size cap");
        sub->callback([&] {
            action = [&] {
                sparse.seed = seed;
                return cmd_sparse(path, sparse);
            };
        });

        VerifyArgs verify;
        sub = app.add_subcommand("verify", "Exhaustively check a duality, shadow duality or sparse replacement");
        sub->add_option("kind", verify.kind, "duality, shadow or sparse")
            ->required()
            ->check(CLI::IsMember({"duality", "shadow", "sparse"}));
        sub->add_option("first", verify.first, "Obstructions, family, or original structure")->required();
        sub->add_option("second", verify.second, "Templates or sparse structure")->required();
        sub->add_option("-n,--size", verify.size, "Largest structure checked");
        sub->add_option("--k", verify.k, "Target size bound (sparse)");
        sub->add_option("--ell", verify.ell, "Girth bound (sparse)");
        add_limits(sub);
        sub->callback([&] { action = [&] { return cmd_verify(verify, limits); }; });

        for (auto * s : app.get_subcommands({}))
            s->fallthrough();

        std::vector<std::string> reversed(args.rbegin(), args.rend());
        try {
            app.parse(reversed);
        }
        catch (const CLI::CallForHelp &) {
            out << app.help();
            return yes;
        }
        catch (const CLI::ParseError & e) {
            err << "error: " << e.what() << "\n";
            return error;
        }

        CommandResult result;
        try {
            result = action();
        }
        catch (const GuardExceeded & e) {
            result = {error, {}, {{"error", e.what()}, {"guard", true}}};
            err << "guard exceeded: " << e.what() << "\n";
        }
        catch (const std::exception & e) {
            result = {error, {}, {{"error", e.what()}}};
            err << "error: " << e.what() << "\n";
        }

        result.machine["command"] = app.get_subcommands().front()->get_name();
        result.machine["exit_code"] = result.exit_code;
        if (format == "machine")
            out << result.machine.dump(2) << "\n";
        else
            out << result.human;
        return result.exit_code;
    }
}
