// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cpse/config.hpp"
#include "cpse/divergence.hpp"
#include "cpse/ensemble.hpp"

namespace cpse {

// Rooted DAG whose nodes are container layer names; edges are pure
// precedence. Children are kept in node-list order.
class ArchGraph
{
public:
  const std::string& root() const { return nodes_[root_]; }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<std::pair<std::string, std::string>>& edges() const { return edges_; }

  std::size_t index_of(const std::string& name) const;
  const std::vector<std::size_t>& children(std::size_t node) const { return children_[node]; }
  std::size_t in_degree(std::size_t node) const { return in_degree_[node]; }
  bool has_merges() const;

  friend ArchGraph parse_graph(const nlohmann::json& doc, bool allow_merges);

private:
  std::vector<std::string> nodes_;
  std::vector<std::pair<std::string, std::string>> edges_;
  std::size_t root_ = 0;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> in_degree_;
};

// Schema: {"root": str, "nodes": [str...], "edges": [[str, str]...]}.
// Rejects cycles, several roots, unreachable nodes and, unless allowed,
// merge nodes (in-degree > 1). Throws InputError.
ArchGraph parse_graph(const nlohmann::json& doc, bool allow_merges = false);

nlohmann::json to_json(const ArchGraph& g);

struct BranchPoint
{
  std::string node;
  std::size_t out_degree = 0;
};

struct BranchDecomposition
{
  std::vector<std::vector<std::string>> paths; // root-to-leaf, lexicographic by node order
  std::vector<BranchPoint> branch_points;      // nodes with out-degree > 1, in node order

  // Root-to-node prefix for a branch point.
  std::vector<std::string> prefix_to(const std::string& node) const;
};

BranchDecomposition decompose(const ArchGraph& g);

// Deterministic Kahn order, ties broken by node-list order.
std::vector<std::string> linearize_topological(const ArchGraph& g);

// Throws InputError naming the first node that is not a layer of the ensemble.
void check_layers(const ArchGraph& g, const LayerMatrixEnsemble& ensemble);

struct BranchTerm
{
  std::vector<std::string> nodes;
  double coefficient = 0.0; // +1 for a path, -(out_degree - 1) for a branch prefix
  double cpse = 0.0;
  CpseReport report; // empty for single-layer prefixes, whose cPSE is 0
};

struct BranchedReport
{
  double total = 0.0;
  std::vector<BranchTerm> terms;
  BranchDecomposition decomposition;
};

// Sum of path cPSE values minus (out_degree - 1) times the root-to-branch
// prefix cPSE for every branch point. Every term runs the feedforward
// cascade on its own layer sequence, with its own N and grid.
BranchedReport branched_cpse(const ArchGraph& g, const LayerMatrixEnsemble& ensemble, const RunConfig& config);

} // namespace cpse
