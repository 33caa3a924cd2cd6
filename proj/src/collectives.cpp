#include "pccl/collectives.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace pccl {

std::string to_string(Primitive p) {
  switch (p) {
    case Primitive::ReduceScatter: return "reduce_scatter";
    case Primitive::AllGather: return "all_gather";
    case Primitive::AllReduce: return "all_reduce";
    case Primitive::AllToAll: return "all_to_all";
  }
  return "reduce_scatter";
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Ring: return "ring";
    case Algorithm::Rhd: return "rhd";
    case Algorithm::Bucket: return "bucket";
    case Algorithm::Dex: return "dex";
  }
  return "ring";
}

Primitive primitive_from_string(const std::string& s) {
  if (s == "reduce_scatter") return Primitive::ReduceScatter;
  if (s == "all_gather") return Primitive::AllGather;
  if (s == "all_reduce") return Primitive::AllReduce;
  if (s == "all_to_all") return Primitive::AllToAll;
  throw std::invalid_argument("unknown primitive: " + s);
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "ring") return Algorithm::Ring;
  if (s == "rhd") return Algorithm::Rhd;
  if (s == "bucket") return Algorithm::Bucket;
  if (s == "dex") return Algorithm::Dex;
  throw std::invalid_argument("unknown algorithm: " + s);
}

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

void require_reduce_family(Primitive p) {
  if (p == Primitive::AllToAll)
    throw std::invalid_argument("all_to_all is served by dex_schedule");
}

int log2_exact(int n) {
  if (n < 2 || (n & (n - 1)) != 0)
    throw std::invalid_argument("rank count must be a power of two >= 2");
  return std::countr_zero(static_cast<unsigned>(n));
}

}  // namespace

Schedule ring_schedule(int n, Primitive primitive, double total_bytes) {
  if (n < 2) throw std::invalid_argument("ring schedule needs n >= 2");
  require_reduce_family(primitive);
  Schedule s{n, primitive, Algorithm::Ring, {}};
  double w = total_bytes / n;

  auto add_rs = [&] {
    for (int t = 0; t < n - 1; ++t) {
      ScheduleRound r;
      r.size_bytes = w;
      for (int i = 0; i < n; ++i) {
        r.transfers.push_back({i, (i + 1) % n});
        r.payload.push_back({{mod(i - t - 1, n)}, true});
      }
      s.rounds.push_back(std::move(r));
    }
  };
  auto add_ag = [&] {
    for (int t = 0; t < n - 1; ++t) {
      ScheduleRound r;
      r.size_bytes = w;
      for (int i = 0; i < n; ++i) {
        r.transfers.push_back({i, (i + 1) % n});
        r.payload.push_back({{mod(i - t, n)}, false});
      }
      s.rounds.push_back(std::move(r));
    }
  };

  if (primitive != Primitive::AllGather) add_rs();
  if (primitive != Primitive::ReduceScatter) add_ag();
  return s;
}

Schedule rhd_schedule(int n, Primitive primitive, double total_bytes) {
  require_reduce_family(primitive);
  int logn = log2_exact(n);
  Schedule s{n, primitive, Algorithm::Rhd, {}};

  // Recursive halving: exchange across the highest remaining bit first,
  // sending the accumulated half that belongs to the partner's side.
  auto add_rs = [&] {
    for (int k = 0; k < logn; ++k) {
      int bit = logn - 1 - k;
      ScheduleRound r;
      r.size_bytes = total_bytes / static_cast<double>(1 << (k + 1));
      for (int i = 0; i < n; ++i) {
        int partner = i ^ (1 << bit);
        std::vector<int> chunks;
        for (int c = 0; c < n; ++c) {
          // c is still held by i iff it agrees with i on all processed bits.
          if ((c >> (bit + 1)) == (i >> (bit + 1)) &&
              ((c >> bit) & 1) == ((partner >> bit) & 1)) {
            chunks.push_back(c);
          }
        }
        r.transfers.push_back({i, partner});
        r.payload.push_back({std::move(chunks), true});
      }
      s.rounds.push_back(std::move(r));
    }
  };
  // Recursive doubling mirror: ascending distances, sender keeps a copy.
  auto add_ag = [&] {
    for (int k = 0; k < logn; ++k) {
      ScheduleRound r;
      r.size_bytes = total_bytes / static_cast<double>(n) * (1 << k);
      for (int i = 0; i < n; ++i) {
        int partner = i ^ (1 << k);
        std::vector<int> chunks;
        for (int c = 0; c < n; ++c)
          if ((c >> k) == (i >> k)) chunks.push_back(c);
        r.transfers.push_back({i, partner});
        r.payload.push_back({std::move(chunks), false});
      }
      s.rounds.push_back(std::move(r));
    }
  };

  if (primitive != Primitive::AllGather) add_rs();
  if (primitive != Primitive::ReduceScatter) add_ag();
  return s;
}

Schedule bucket_schedule(const std::vector<int>& dims, Primitive primitive,
                         double total_bytes) {
  require_reduce_family(primitive);
  if (dims.empty()) throw std::invalid_argument("dims must be nonempty");
  for (int d : dims)
    if (d < 2) throw std::invalid_argument("every dim must be >= 2");
  int n = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>{});
  int ndims = static_cast<int>(dims.size());
  Schedule s{n, primitive, Algorithm::Bucket, {}};

  auto coord = [&](int rank, int d) {
    for (int q = 0; q < d; ++q) rank /= dims[q];
    return rank % dims[d];
  };
  // All ranks sharing every coordinate except dim d, ordered by coord d.
  auto rings_of_dim = [&](int d) {
    std::vector<std::vector<int>> rings;
    std::vector<bool> seen(n, false);
    for (int r = 0; r < n; ++r) {
      if (seen[r]) continue;
      std::vector<int> ring;
      for (int r2 = r; r2 < n; ++r2) {
        bool same = true;
        for (int q = 0; q < ndims; ++q)
          if (q != d && coord(r2, q) != coord(r, q)) same = false;
        if (same) {
          seen[r2] = true;
          ring.push_back(r2);
        }
      }
      std::sort(ring.begin(), ring.end(),
                [&](int a, int b) { return coord(a, d) < coord(b, d); });
      rings.push_back(std::move(ring));
    }
    return rings;
  };

  // Chunks still converging on rank r at the start of phase ph: destination
  // coordinates agree with r on every already-swept dimension.
  auto block = [&](int r, int ph, int want_coord, int d) {
    std::vector<int> chunks;
    for (int c = 0; c < n; ++c) {
      bool ok = coord(c, d) == want_coord;
      for (int q = 0; q < ph && ok; ++q)
        if (coord(c, q) != coord(r, q)) ok = false;
      if (ok) chunks.push_back(c);
    }
    return chunks;
  };

  auto add_rs = [&] {
    int prefix = 1;
    for (int ph = 0; ph < ndims; ++ph) {
      int L = dims[ph];
      double w = total_bytes / n * (n / (prefix * L));
      size_t first = s.rounds.size();
      for (int t = 0; t < L - 1; ++t) {
        s.rounds.emplace_back();
        s.rounds.back().size_bytes = w;
      }
      for (const auto& ring : rings_of_dim(ph)) {
        for (int t = 0; t < L - 1; ++t) {
          auto& round = s.rounds[first + t];
          for (int j = 0; j < L; ++j) {
            int g = mod(j - t - 1, L);
            round.transfers.push_back({ring[j], ring[(j + 1) % L]});
            round.payload.push_back({block(ring[j], ph, g, ph), true});
          }
        }
      }
      prefix *= L;
    }
  };

  auto add_ag = [&] {
    int prefix = n;
    for (int ph = ndims - 1; ph >= 0; --ph) {
      int L = dims[ph];
      double w = total_bytes / n * (n / prefix);
      size_t first = s.rounds.size();
      for (int t = 0; t < L - 1; ++t) {
        s.rounds.emplace_back();
        s.rounds.back().size_bytes = w;
      }
      for (const auto& ring : rings_of_dim(ph)) {
        for (int t = 0; t < L - 1; ++t) {
          auto& round = s.rounds[first + t];
          for (int j = 0; j < L; ++j) {
            int g = mod(j - t, L);
            round.transfers.push_back({ring[j], ring[(j + 1) % L]});
            round.payload.push_back({block(ring[j], ph, g, ph), false});
          }
        }
      }
      prefix /= L;
    }
  };

  if (primitive != Primitive::AllGather) add_rs();
  if (primitive != Primitive::ReduceScatter) add_ag();
  return s;
}

Schedule dex_schedule(int n, double total_bytes) {
  int logn = log2_exact(n);
  Schedule s{n, Primitive::AllToAll, Algorithm::Dex, {}};

  // held[i] tracks chunk (src,dst) tokens, encoded src*n + dst.
  std::vector<std::vector<int>> held(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) held[i].push_back(i * n + j);

  for (int k = 0; k < logn; ++k) {
    ScheduleRound r;
    r.size_bytes = total_bytes / 2.0;
    std::vector<std::vector<int>> incoming(n);
    for (int i = 0; i < n; ++i) {
      int partner = i ^ (1 << k);
      std::vector<int> send, keep;
      for (int c : held[i]) {
        int dest = c % n;
        if (((dest >> k) & 1) != ((i >> k) & 1)) {
          send.push_back(c);
        } else {
          keep.push_back(c);
        }
      }
      incoming[partner] = send;
      held[i] = std::move(keep);
      r.transfers.push_back({i, partner});
      r.payload.push_back({std::move(send), true});
    }
    for (int i = 0; i < n; ++i)
      held[i].insert(held[i].end(), incoming[i].begin(), incoming[i].end());
    s.rounds.push_back(std::move(r));
  }
  return s;
}

Schedule split_rounds(const Schedule& s, int tx_per_gpu, int rx_per_gpu) {
  if (tx_per_gpu < 1 || rx_per_gpu < 1)
    throw std::invalid_argument("tx/rx must be >= 1");
  Schedule out{s.n_ranks, s.primitive, s.algorithm, {}};
  for (const auto& round : s.rounds) {
    // Greedy packing in (src, dst) order into the earliest feasible
    // sub-round.
    std::vector<size_t> order(round.transfers.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return round.transfers[a] < round.transfers[b];
    });
    std::vector<ScheduleRound> subs;
    std::vector<std::vector<int>> out_deg, in_deg;
    for (size_t idx : order) {
      const Transfer& t = round.transfers[idx];
      size_t k = 0;
      for (; k < subs.size(); ++k) {
        if (out_deg[k][t.src] < tx_per_gpu && in_deg[k][t.dst] < rx_per_gpu)
          break;
      }
      if (k == subs.size()) {
        subs.emplace_back();
        subs.back().size_bytes = round.size_bytes;
        out_deg.emplace_back(s.n_ranks, 0);
        in_deg.emplace_back(s.n_ranks, 0);
      }
      subs[k].transfers.push_back(t);
      if (!round.payload.empty()) subs[k].payload.push_back(round.payload[idx]);
      out_deg[k][t.src]++;
      in_deg[k][t.dst]++;
    }
    for (auto& sub : subs) out.rounds.push_back(std::move(sub));
  }
  return out;
}

}  // namespace pccl
