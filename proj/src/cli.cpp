#include <homrep/cli.hpp>

#include <homrep/compile.hpp>
#include <homrep/decomp.hpp>
#include <homrep/lab.hpp>
#include <homrep/query.hpp>
#include <homrep/reduce.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace homrep {

namespace {

std::vector<int> parse_int_list(const std::string & text)
{
    std::vector<int> out;
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back(std::stoi(tok));
    return out;
}

void emit(const std::string & path, const std::function<void(std::ostream &)> & writer)
{
    if (path.empty() || path == "-") {
        writer(std::cout);
        return;
    }
    std::ofstream out(path);
    if (! out)
        throw DomainError("cannot write '" + path + "'");
    writer(out);
}

int do_run(const std::vector<std::string> & args)
{
    CLI::App app{"factorised homomorphism representations"};
    app.require_subcommand(1);

    std::string in_a, in_b, in_c, in_td, in_am, in_h, output;
    std::string decomp_method = "minfill";
    std::string keep_spec, family = "path";
    std::vector<std::string> allow_specs;
    std::string ns_spec = "32,64,128", bn_spec = "8,16,24,32";
    int limit = -1, seeds = 100, param = 6, lab_k = 3;
    std::uint64_t seed = 0;
    std::size_t budget = 2'000'000;
    (void)lab_k;

    auto * compile_cmd = app.add_subcommand("compile", "compile Hom(A,B) to a d-rep circuit");
    compile_cmd->add_option("A", in_a, "left structure file")->required();
    compile_cmd->add_option("B", in_b, "right structure file")->required();
    compile_cmd->add_option("--decomp", decomp_method, "minfill|mindegree|exact");
    compile_cmd->add_option("--td", in_td, "use this tree decomposition file");
    compile_cmd->add_option("-o,--output", output, "output circuit file");

    auto * count_cmd = app.add_subcommand("count", "count the represented set");
    count_cmd->add_option("C", in_c, "circuit file")->required();

    auto * enum_cmd = app.add_subcommand("enumerate", "stream the represented set");
    enum_cmd->add_option("C", in_c, "circuit file")->required();
    enum_cmd->add_option("--limit", limit, "stop after N outputs");
    enum_cmd->add_option("-o,--output", output, "output file (default stdout)");

    auto * project_cmd = app.add_subcommand("project", "project onto left elements");
    project_cmd->add_option("C", in_c, "circuit file")->required();
    project_cmd->add_option("--keep", keep_spec, "comma-separated elements")->required();
    project_cmd->add_option("-o,--output", output, "output circuit file");

    auto * restrict_cmd = app.add_subcommand("restrict", "filter allowed right values");
    restrict_cmd->add_option("C", in_c, "circuit file")->required();
    restrict_cmd->add_option("--allow", allow_specs, "filters like x=a1,a2 (repeatable)");
    restrict_cmd->add_option("-o,--output", output, "output circuit file");

    auto * check_cmd = app.add_subcommand("check", "well-definedness and determinism");
    check_cmd->add_option("C", in_c, "circuit file")->required();
    check_cmd->add_option("--budget", budget, "materialisation budget");

    auto * trans_cmd = app.add_subcommand("transversal", "treelike expansion");
    trans_cmd->add_option("C", in_c, "circuit file")->required();
    trans_cmd->add_option("-o,--output", output, "output circuit file");

    auto * norm_cmd = app.add_subcommand("normalize", "normal form");
    norm_cmd->add_option("C", in_c, "circuit file")->required();
    norm_cmd->add_option("-o,--output", output, "output circuit file");

    auto * decomp_cmd = app.add_subcommand("decompose", "tree-decompose a structure");
    decomp_cmd->add_option("A", in_a, "structure file")->required();
    decomp_cmd->add_option("--method", decomp_method, "minfill|mindegree|exact");
    decomp_cmd->add_option("-o,--output", output, "output .td file");

    auto * vtd_cmd = app.add_subcommand("validate-td", "check a decomposition");
    vtd_cmd->add_option("A", in_a, "structure file")->required();
    vtd_cmd->add_option("TD", in_td, "decomposition file")->required();

    auto * vam_cmd = app.add_subcommand("validate-am", "check an almost-minor map");
    vam_cmd->add_option("--source", in_a, "source graph structure")->required();
    vam_cmd->add_option("--target", in_b, "target graph structure")->required();
    vam_cmd->add_option("MAP", in_am, "map file")->required();

    auto * reduce_cmd = app.add_subcommand("reduce", "reduction constructions");
    reduce_cmd->require_subcommand(1);
    auto * r_ind = reduce_cmd->add_subcommand("individualise", "add P_a colours");
    r_ind->add_option("A", in_a, "structure file")->required();
    r_ind->add_option("-o,--output", output, "output structure file");
    auto * r_gaif = reduce_cmd->add_subcommand("gaifman", "Gaifman reduction instance");
    r_gaif->add_option("A", in_a, "individualised structure file")->required();
    r_gaif->add_option("H", in_h, "partitioned graph structure file")->required();
    r_gaif->add_option("-o,--output", output, "output structure file");
    auto * r_lift = reduce_cmd->add_subcommand("lift", "partitioned-graph product");
    r_lift->add_option("G", in_a, "left graph structure file")->required();
    r_lift->add_option("H", in_h, "right graph structure file")->required();
    r_lift->add_option("-o,--output", output, "output structure file");
    auto * r_hstar = reduce_cmd->add_subcommand("hstar", "almost-minor instance H*");
    r_hstar->add_option("MAP", in_am, "map file")->required();
    r_hstar->add_option("H", in_h, "partitioned graph structure file")->required();
    r_hstar->add_option("--source", in_a, "source graph structure")->required();
    r_hstar->add_option("--target", in_b, "target graph structure")->required();
    r_hstar->add_option("-o,--output", output, "output structure file");
    auto * r_rec = reduce_cmd->add_subcommand("recover", "recover the source circuit");
    r_rec->add_option("MAP", in_am, "map file")->required();
    r_rec->add_option("H", in_h, "partitioned graph structure file")->required();
    r_rec->add_option("C", in_c, "circuit over the H* instance")->required();
    r_rec->add_option("--source", in_a, "source graph structure")->required();
    r_rec->add_option("--target", in_b, "target graph structure")->required();
    r_rec->add_option("-o,--output", output, "output circuit file");

    auto * lab_cmd = app.add_subcommand("lab", "experiments");
    lab_cmd->require_subcommand(1);
    auto * l_lemma = lab_cmd->add_subcommand("lemma-g", "random-graph construction stats");
    l_lemma->add_option("--n", ns_spec, "comma-separated vertex counts");
    l_lemma->add_option("--seeds", seeds, "seeds per n");
    l_lemma->add_option("--budget", budget, "biclique search budget");
    l_lemma->add_option("-o,--output", output, "CSV output file");
    auto * l_scale = lab_cmd->add_subcommand("scaling", "compiled-size scaling");
    l_scale->add_option("--family", family, "path|cycle|grid|clique");
    l_scale->add_option("--param", param, "family size parameter");
    l_scale->add_option("--bn", bn_spec, "comma-separated random-B vertex counts");
    l_scale->add_option("--seed", seed, "random seed");
    l_scale->add_option("-o,--output", output, "CSV output file");
    auto * l_bic = lab_cmd->add_subcommand("biclique-cover", "edge cover by bicliques");
    l_bic->add_option("G", in_a, "graph structure file")->required();
    l_bic->add_option("-o,--output", output, "emit the induced circuit here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*compile_cmd) {
        auto a = parse_structure_file(in_a);
        auto b = parse_structure_file(in_b);
        if (! a.isolated_elements().empty())
            std::cerr << "warning: left structure has isolated elements; "
                         "homomorphisms are unconstrained there\n";
        FactCircuit c;
        if (a.universe.empty())
            c = unit_circuit(a.universe, b.universe);
        else {
            TreeDecomposition td = in_td.empty()
                ? decompose(gaifman_graph(a), parse_method(decomp_method))
                : parse_td_file(in_td, a);
            c = compile_hom(a, b, make_plan(a, td));
        }
        emit(output, [&](std::ostream & os) { write_circuit(os, c); });
    }
    else if (*count_cmd) {
        std::cout << count_homs(parse_circuit_file(in_c)) << '\n';
    }
    else if (*enum_cmd) {
        auto c = parse_circuit_file(in_c);
        emit(output, [&](std::ostream & os) {
            EnumerationCursor cur(c);
            int n = 0;
            while (auto h = cur.next()) {
                if (limit >= 0 && n >= limit)
                    break;
                ++n;
                for (std::size_t v = 0; v < c.left_universe.size(); ++v) {
                    auto it = h->find(static_cast<int>(v));
                    os << (v ? "\t" : "")
                       << (it == h->end() ? std::string{"-"} : c.right_universe[it->second]);
                }
                os << '\n';
            }
        });
    }
    else if (*project_cmd) {
        auto c = parse_circuit_file(in_c);
        std::vector<std::string> keep;
        std::istringstream ss(keep_spec);
        std::string tok;
        while (std::getline(ss, tok, ','))
            keep.push_back(tok);
        auto r = project_names(c, keep);
        emit(output, [&](std::ostream & os) { write_circuit(os, r); });
    }
    else if (*restrict_cmd) {
        auto c = parse_circuit_file(in_c);
        std::map<int, std::set<int>> filters;
        for (const auto & spec : allow_specs) {
            auto eq = spec.find('=');
            if (eq == std::string::npos)
                throw DomainError("bad --allow '" + spec + "', expected x=v1,v2");
            int a = c.left_index(spec.substr(0, eq));
            std::istringstream ss(spec.substr(eq + 1));
            std::string tok;
            while (std::getline(ss, tok, ','))
                filters[a].insert(c.right_index(tok));
        }
        auto r = restrict_values(c, filters);
        emit(output, [&](std::ostream & os) { write_circuit(os, r); });
    }
    else if (*check_cmd) {
        auto c = parse_circuit_file(in_c);
        auto rep = check_well_defined(c);
        for (const auto & v : rep.violations)
            std::cerr << v << '\n';
        if (! rep.ok())
            return 1;
        auto det = check_deterministic(c, budget);
        std::cout << (det.verdict == DeterminismResult::Verdict::Certified ? "deterministic"
                : det.verdict == DeterminismResult::Verdict::Refuted      ? "nondeterministic"
                                                                          : "unknown")
                  << '\n';
    }
    else if (*trans_cmd) {
        auto r = transversal(parse_circuit_file(in_c));
        emit(output, [&](std::ostream & os) { write_circuit(os, r); });
    }
    else if (*norm_cmd) {
        auto r = normalize(parse_circuit_file(in_c));
        emit(output, [&](std::ostream & os) { write_circuit(os, r); });
    }
    else if (*decomp_cmd) {
        auto a = parse_structure_file(in_a);
        auto td = decompose(gaifman_graph(a), parse_method(decomp_method));
        emit(output, [&](std::ostream & os) { write_td(os, td, a.universe); });
    }
    else if (*vtd_cmd) {
        auto a = parse_structure_file(in_a);
        auto td = parse_td_file(in_td, a);
        auto rep = validate_decomposition(td, gaifman_graph(a));
        for (const auto & v : rep.violations)
            std::cerr << v << '\n';
        if (! rep.ok())
            return 1;
        std::cout << "valid width=" << rep.computed_width << '\n';
    }
    else if (*vam_cmd) {
        auto src = structure_graph(parse_structure_file(in_a));
        auto tgt = structure_graph(parse_structure_file(in_b));
        auto m = parse_am_file(in_am, src, tgt);
        auto rep = validate_almost_minor(m);
        for (const auto & v : rep.violations)
            std::cerr << v << '\n';
        if (! rep.ok())
            return 1;
        std::cout << "valid\n";
    }
    else if (*r_ind) {
        auto a = individualise(parse_structure_file(in_a));
        emit(output, [&](std::ostream & os) { write_structure(os, a); });
    }
    else if (*r_gaif) {
        auto a_id = parse_structure_file(in_a);
        auto h = PartitionedGraph::from_structure(parse_structure_file(in_h));
        auto r = gaifman_lift(a_id, h);
        emit(output, [&](std::ostream & os) { write_structure(os, r); });
    }
    else if (*r_lift) {
        auto g = structure_graph(parse_structure_file(in_a));
        auto h = structure_graph(parse_structure_file(in_h));
        auto r = lift_graph(g, h);
        emit(output, [&](std::ostream & os) { write_structure(os, r.to_structure()); });
    }
    else if (*r_hstar) {
        auto src = structure_graph(parse_structure_file(in_a));
        auto tgt = structure_graph(parse_structure_file(in_b));
        auto m = parse_am_file(in_am, src, tgt);
        auto h = PartitionedGraph::from_structure(parse_structure_file(in_h));
        auto r = build_hstar(m, h);
        emit(output, [&](std::ostream & os) { write_structure(os, r.to_structure()); });
    }
    else if (*r_rec) {
        auto src = structure_graph(parse_structure_file(in_a));
        auto tgt = structure_graph(parse_structure_file(in_b));
        auto m = parse_am_file(in_am, src, tgt);
        auto h = PartitionedGraph::from_structure(parse_structure_file(in_h));
        auto r = recover_circuit(m, h, parse_circuit_file(in_c));
        emit(output, [&](std::ostream & os) { write_circuit(os, r); });
    }
    else if (*l_lemma) {
        auto rows = experiment_lemma_g(parse_int_list(ns_spec), seeds, budget);
        emit(output, [&](std::ostream & os) { write_lemma_g_csv(os, rows); });
    }
    else if (*l_scale) {
        std::vector<RandomGraphSpec> specs;
        for (int n : parse_int_list(bn_spec))
            specs.push_back({n, 0.5, seed});
        auto rows = experiment_size_scaling(family, param, specs);
        emit(output, [&](std::ostream & os) { write_scaling_csv(os, rows); });
    }
    else if (*l_bic) {
        auto g = structure_graph(parse_structure_file(in_a));
        auto cover = biclique_cover_cost(g);
        std::cout << "cost " << cover.cost << (cover.exact ? " exact" : " greedy") << '\n';
        for (const auto & [sa, sb] : cover.bicliques) {
            for (std::size_t i = 0; i < sa.size(); ++i)
                std::cout << (i ? "," : "") << g.names[sa[i]];
            std::cout << " | ";
            for (std::size_t i = 0; i < sb.size(); ++i)
                std::cout << (i ? "," : "") << g.names[sb[i]];
            std::cout << '\n';
        }
        if (! output.empty())
            write_circuit_file(output, cover.circuit);
    }
    return 0;
}

}

int run_cli(const std::vector<std::string> & args)
{
    try {
        return do_run(args);
    }
    catch (const DomainError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}
