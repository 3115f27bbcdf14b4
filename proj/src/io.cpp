#include "shieldflow/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace shieldflow::io {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view s) {
  const std::uint64_t h = fnv1a64(s);
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) {
    buf[15 - i] = digits[(h >> (4 * i)) & 0xf];
  }
  buf[16] = '\0';
  return std::string(buf, 16);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

void put_row(std::ofstream& out, const std::vector<double>& vals) {
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out << ',';
    out << format_double(vals[i]);
  }
  out << '\n';
}

}  // namespace

void write_snapshots_csv(const std::string& path,
                         const std::vector<Snapshot>& snaps, double x0,
                         double dx, const InvariantMap& map) {
  std::ofstream out = open_out(path);
  out << "t,x,rho,u,rho_hat,m_hat,w,z\n";
  const double delta = map.delta();
  for (const Snapshot& s : snaps) {
    for (std::size_t i = 0; i < s.rho_hat.size(); ++i) {
      const double x = x0 + (static_cast<double>(i) + 0.5) * dx;
      const double rho_hat = s.rho_hat[i];
      const double m_hat = s.m_hat[i];
      const double rho = rho_hat + delta;
      const double u = m_hat / rho_hat;
      const Invariants inv = map.to_invariants(rho, u);
      put_row(out, {s.t, x, rho, u, rho_hat, m_hat, inv.w, inv.z});
    }
  }
}

void write_monitors_csv(const std::string& path,
                        const std::vector<MonitorRow>& rows) {
  std::ofstream out = open_out(path);
  out << "t,dt,min_rho,max_speed,max_w,min_z,mass,entropy_total\n";
  for (const MonitorRow& r : rows) {
    put_row(out, {r.t, r.dt, r.min_rho, r.max_speed, r.max_w, r.min_z, r.mass,
                  r.entropy_total});
  }
}

void write_budget_csv(const std::string& path, const BudgetReport& report) {
  std::ofstream out = open_out(path);
  out << "t,x,cell_production,cumulative\n";
  for (const BudgetRow& r : report.rows) {
    put_row(out, {r.t, r.x, r.cell_production, r.cumulative});
  }
}

void write_lu_csv(const std::string& path, const LuReport& report) {
  std::ofstream out = open_out(path);
  out << "rho,p1,residual,pollution\n";
  for (const LuRow& r : report.rows) {
    put_row(out, {r.rho, r.p1, r.residual, r.pollution});
  }
}

void write_levels_csv(const std::string& path, const StudyReport& report) {
  std::ofstream out = open_out(path);
  out << "param,epsilon,min_rho,max_w_start,max_w_peak,mass_drift,steps,"
         "aborted\n";
  for (const LevelSummary& lv : report.levels) {
    out << format_double(lv.param) << ',' << format_double(lv.epsilon) << ','
        << format_double(lv.min_rho) << ',' << format_double(lv.max_w_start)
        << ',' << format_double(lv.max_w_peak) << ','
        << format_double(lv.mass_drift) << ',' << lv.steps << ','
        << (lv.aborted ? 1 : 0) << '\n';
  }
}

void write_overlay_csv(const std::string& path, const StudyReport& report) {
  std::ofstream out = open_out(path);
  out << "x";
  for (double p : report.ladder) out << ",rho_" << format_double(p);
  out << '\n';
  for (std::size_t i = 0; i < report.x.size(); ++i) {
    out << format_double(report.x[i]);
    for (const std::vector<double>& col : report.rho_overlay) {
      out << ',';
      if (i < col.size()) out << format_double(col[i]);
    }
    out << '\n';
  }
}

}  // namespace shieldflow::io
