#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hamtrio/error.hpp"

namespace hamtrio::symcore {

class VarTable;
using VarTablePtr = std::shared_ptr<const VarTable>;

enum class VarKind { Field, Param, Pencil };

// The fixed variable universe of a session: field variables u1..un, then
// declared parameters (alphabetical), then an optional pencil variable.
// Variable order is fixed for the lifetime of the table; every Polynomial
// carries a pointer to its table.
class VarTable {
 public:
  static VarTablePtr make(std::vector<std::string> field_vars,
                          std::vector<std::string> params,
                          std::optional<std::string> pencil = std::nullopt) {
    auto t = std::shared_ptr<VarTable>(new VarTable());
    t->field_vars_ = std::move(field_vars);
    std::sort(params.begin(), params.end());
    t->params_ = std::move(params);
    t->pencil_ = std::move(pencil);
    t->index();
    return t;
  }

  // Field variables named u1..un.
  static VarTablePtr make_n(int n, std::vector<std::string> params = {},
                            std::optional<std::string> pencil = std::nullopt) {
    std::vector<std::string> fv;
    fv.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) fv.push_back("u" + std::to_string(i));
    return make(std::move(fv), std::move(params), std::move(pencil));
  }

  int n_field() const { return static_cast<int>(field_vars_.size()); }
  int n_params() const { return static_cast<int>(params_.size()); }
  bool has_pencil() const { return pencil_.has_value(); }
  int size() const {
    return n_field() + n_params() + (has_pencil() ? 1 : 0);
  }

  // Ids: 0..n-1 field vars, then params, pencil last.
  bool is_field(int id) const { return id < n_field(); }
  bool is_pencil(int id) const { return has_pencil() && id == size() - 1; }
  bool is_param(int id) const { return !is_field(id) && !is_pencil(id); }
  int pencil_id() const {
    if (!has_pencil()) throw InternalError("table has no pencil variable");
    return size() - 1;
  }
  int field_id(int i /*1-based*/) const { return i - 1; }

  const std::string& name(int id) const {
    if (id < n_field()) return field_vars_[static_cast<std::size_t>(id)];
    id -= n_field();
    if (id < n_params()) return params_[static_cast<std::size_t>(id)];
    return *pencil_;
  }

  int id_of(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw ParseError("undeclared name: " + name);
    return it->second;
  }

  bool declared(const std::string& name) const { return by_name_.count(name) != 0; }

  const std::vector<std::string>& field_vars() const { return field_vars_; }
  const std::vector<std::string>& params() const { return params_; }
  const std::optional<std::string>& pencil() const { return pencil_; }

  // New table with extra parameters and/or a pencil variable added.
  VarTablePtr extended(std::vector<std::string> extra_params,
                       std::optional<std::string> pencil = std::nullopt) const {
    std::vector<std::string> p = params_;
    for (auto& e : extra_params)
      if (std::find(p.begin(), p.end(), e) == p.end()) p.push_back(std::move(e));
    std::optional<std::string> pv = pencil ? pencil : pencil_;
    return make(field_vars_, std::move(p), std::move(pv));
  }

  bool same_universe(const VarTable& o) const {
    return field_vars_ == o.field_vars_ && params_ == o.params_ && pencil_ == o.pencil_;
  }

 private:
  VarTable() = default;

  void index() {
    by_name_.clear();
    int id = 0;
    auto add = [&](const std::string& nm) {
      if (nm.empty()) throw InputError("empty variable name");
      if (!by_name_.emplace(nm, id).second)
        throw InputError("duplicate variable name: " + nm);
      ++id;
    };
    for (auto& v : field_vars_) add(v);
    for (auto& p : params_) add(p);
    if (pencil_) add(*pencil_);
  }

  std::vector<std::string> field_vars_;
  std::vector<std::string> params_;  // kept sorted
  std::optional<std::string> pencil_;
  std::map<std::string, int> by_name_;
};

}  // namespace hamtrio::symcore
