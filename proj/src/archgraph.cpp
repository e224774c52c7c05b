// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#include "cpse/archgraph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "cpse/error.hpp"
#include "cpse/pipeline.hpp"

namespace cpse {

std::size_t ArchGraph::index_of(const std::string& name) const
{
  const auto it = std::find(nodes_.begin(), nodes_.end(), name);
  if (it == nodes_.end())
    throw InputError("unknown graph node '" + name + "'");
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool ArchGraph::has_merges() const
{
  return std::any_of(in_degree_.begin(), in_degree_.end(), [](std::size_t d) { return d > 1; });
}

ArchGraph parse_graph(const nlohmann::json& doc, bool allow_merges)
{
  ArchGraph g;
  try
  {
    if (!doc.is_object())
      throw InputError("graph document must be a JSON object");
    g.nodes_ = doc.at("nodes").get<std::vector<std::string>>();
    const auto root = doc.at("root").get<std::string>();
    for (const auto& e : doc.at("edges"))
    {
      if (!e.is_array() || e.size() != 2)
        throw InputError("graph edges must be [from, to] pairs");
      g.edges_.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }

    if (g.nodes_.empty())
      throw InputError("graph has no nodes");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < g.nodes_.size(); ++i)
      if (!index.emplace(g.nodes_[i], i).second)
        throw InputError("duplicate graph node '" + g.nodes_[i] + "'");
    const auto lookup = [&](const std::string& name) {
      const auto it = index.find(name);
      if (it == index.end())
        throw InputError("unknown layer name '" + name + "' in graph");
      return it->second;
    };

    g.root_ = lookup(root);
    g.children_.assign(g.nodes_.size(), {});
    g.in_degree_.assign(g.nodes_.size(), 0);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& [from, to] : g.edges_)
    {
      const std::size_t a = lookup(from);
      const std::size_t b = lookup(to);
      if (a == b)
        throw InputError("graph has a cycle at '" + from + "'");
      if (!seen.emplace(a, b).second)
        throw InputError("duplicate edge '" + from + "' -> '" + to + "'");
      g.children_[a].push_back(b);
      ++g.in_degree_[b];
    }
    for (auto& c : g.children_)
      std::sort(c.begin(), c.end());
  }
  catch (const nlohmann::json::exception& e)
  {
    throw InputError(std::string("malformed graph document: ") + e.what());
  }

  // Kahn: leftover nodes sit on a cycle.
  std::vector<std::size_t> degree = g.in_degree_;
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < degree.size(); ++i)
    if (degree[i] == 0)
      ready.push_back(i);
  std::size_t visited = 0;
  while (!ready.empty())
  {
    const std::size_t v = ready.back();
    ready.pop_back();
    ++visited;
    for (std::size_t c : g.children_[v])
      if (--degree[c] == 0)
        ready.push_back(c);
  }
  if (visited != g.nodes_.size())
    throw InputError("graph has a cycle");

  if (g.in_degree_[g.root_] != 0)
    throw InputError("root '" + g.root() + "' has incoming edges");
  for (std::size_t i = 0; i < g.nodes_.size(); ++i)
    if (i != g.root_ && g.in_degree_[i] == 0)
      throw InputError("multiple roots: '" + g.root() + "' and '" + g.nodes_[i] + "'");

  std::vector<bool> reached(g.nodes_.size(), false);
  std::vector<std::size_t> stack{g.root_};
  reached[g.root_] = true;
  while (!stack.empty())
  {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t c : g.children_[v])
      if (!reached[c])
      {
        reached[c] = true;
        stack.push_back(c);
      }
  }
  for (std::size_t i = 0; i < g.nodes_.size(); ++i)
    if (!reached[i])
      throw InputError("node '" + g.nodes_[i] + "' unreachable from root");

  if (!allow_merges)
    for (std::size_t i = 0; i < g.nodes_.size(); ++i)
      if (g.in_degree_[i] > 1)
        throw InputError("merge nodes unsupported: '" + g.nodes_[i] + "' has " + std::to_string(g.in_degree_[i]) +
                         " parents (use topological linearization)");
  return g;
}

nlohmann::json to_json(const ArchGraph& g)
{
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [from, to] : g.edges())
    edges.push_back({from, to});
  return {{"root", g.root()}, {"nodes", g.nodes()}, {"edges", edges}};
}

std::vector<std::string> BranchDecomposition::prefix_to(const std::string& node) const
{
  for (const auto& path : paths)
  {
    const auto it = std::find(path.begin(), path.end(), node);
    if (it != path.end())
      return {path.begin(), it + 1};
  }
  throw InputError("node '" + node + "' lies on no path");
}

BranchDecomposition decompose(const ArchGraph& g)
{
  BranchDecomposition d;
  for (std::size_t i = 0; i < g.nodes().size(); ++i)
    if (g.children(i).size() > 1)
      d.branch_points.push_back({g.nodes()[i], g.children(i).size()});

  // Iterative DFS; children are pushed in reverse so the smallest index is
  // expanded first.
  std::vector<std::size_t> path;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{g.index_of(g.root()), 0}};
  while (!stack.empty())
  {
    auto [node, depth] = stack.back();
    stack.pop_back();
    path.resize(depth);
    path.push_back(node);
    const auto& kids = g.children(node);
    if (kids.empty())
    {
      std::vector<std::string> names;
      for (std::size_t v : path)
        names.push_back(g.nodes()[v]);
      d.paths.push_back(std::move(names));
      continue;
    }
    for (auto it = kids.rbegin(); it != kids.rend(); ++it)
      stack.emplace_back(*it, depth + 1);
  }
  return d;
}

std::vector<std::string> linearize_topological(const ArchGraph& g)
{
  const std::size_t n = g.nodes().size();
  std::vector<std::size_t> degree(n);
  for (std::size_t i = 0; i < n; ++i)
    degree[i] = g.in_degree(i);
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (degree[i] == 0)
      ready.push(i);
  std::vector<std::string> order;
  while (!ready.empty())
  {
    const std::size_t v = ready.top();
    ready.pop();
    order.push_back(g.nodes()[v]);
    for (std::size_t c : g.children(v))
      if (--degree[c] == 0)
        ready.push(c);
  }
  return order;
}

void check_layers(const ArchGraph& g, const LayerMatrixEnsemble& ensemble)
{
  for (const std::string& name : g.nodes())
    if (!ensemble.find(name))
      throw InputError("graph node '" + name + "' is not an eligible layer");
}

BranchedReport branched_cpse(const ArchGraph& g, const LayerMatrixEnsemble& ensemble, const RunConfig& config)
{
  config.validate();
  if (g.has_merges())
    throw InputError("merge nodes unsupported by the branching rule");
  check_layers(g, ensemble);

  std::map<std::string, Spectrum> spectra;
  for (const std::string& name : g.nodes())
    spectra.emplace(name, eig_sym(*ensemble.find(name)));

  BranchedReport out;
  out.decomposition = decompose(g);

  const auto run = [&](std::vector<std::string> nodes, double coefficient) {
    BranchTerm term;
    term.nodes = std::move(nodes);
    term.coefficient = coefficient;
    if (term.nodes.size() >= 2)
    {
      std::vector<Spectrum> seq;
      for (const std::string& name : term.nodes)
        seq.push_back(spectra.at(name));
      term.report = analyze_spectra(seq, config).report;
      term.cpse = term.report.cpse;
    }
    out.terms.push_back(std::move(term));
  };

  for (const auto& path : out.decomposition.paths)
    run(path, 1.0);
  for (const BranchPoint& bp : out.decomposition.branch_points)
    run(out.decomposition.prefix_to(bp.node), -static_cast<double>(bp.out_degree - 1));

  for (const BranchTerm& t : out.terms)
    out.total += t.coefficient * t.cpse;
  return out;
}

} // namespace cpse
