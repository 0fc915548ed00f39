#include "a2psim/network.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "a2psim/access_point.hpp"
#include "a2psim/frames.hpp"
#include "a2psim/rng.hpp"
#include "a2psim/scheme.hpp"

namespace a2psim {

namespace {

std::string join_ids(const std::vector<NodeId>& ids) {
  std::string out;
  for (NodeId id : ids) {
    if (!out.empty()) out += ',';
    out += std::to_string(id);
  }
  return out.empty() ? "-" : out;
}

}  // namespace

struct Network::Impl {
  class StaAgent;
  class ApAgent;

  explicit Impl(RunConfig c);

  void start();
  void on_generate(UlPacket p);
  void ul_received(std::uint64_t id, SimTime at);
  void on_dl_ready(std::int64_t window, SimTime at);
  void kick_ap_soon();
  void proto(NodeId node, std::string_view kind, std::string detail = {}) {
    if (kernel.trace().enabled(TraceLevel::Protocol)) {
      kernel.trace().emit(TraceLevel::Protocol, kernel.now(), kind, node, std::move(detail));
    }
  }

  RunConfig cfg;
  SchemeBehavior beh;
  FrameCatalog frames;
  int max_rus;
  Kernel kernel;
  RngStream topo_rng;
  RngStream traffic_rng;
  RngStream backoff_rng;
  Channel channel;
  Topology topo;
  PacketLedger ledger;
  WakeupTracker wakeup;
  ServerMixer server;
  TrafficDriver driver;
  ApState ap;
  std::unique_ptr<ApAgent> ap_agent;
  std::vector<std::unique_ptr<StaAgent>> stas;  // index = NodeId, slot 0 unused
  RunResult res;
  bool started = false;
};

class Network::Impl::StaAgent final : public ChannelUser {
 public:
  StaAgent(Impl& net, NodeId id) : net_(net), id_(id) {}

  StaState& state() { return st_; }
  const StaState& state() const { return st_; }

  void enqueue(std::uint64_t pkt) {
    st_.ul_queue.push_back(pkt);
    maybe_contend();
  }

  void maybe_contend() {
    if (!st_.edca_enabled || st_.ul_queue.empty() || in_exchange_ || net_.channel.contending(id_)) return;
    net_.channel.request_access(id_, net_.cfg.sta_edca, *this);
  }

  std::optional<TxIntent> on_grant(SimTime /*now*/) override {
    if (!st_.edca_enabled || st_.ul_queue.empty()) return std::nullopt;
    in_exchange_ = true;
    return TxIntent{net_.frames.su_data(net_.ledger.at(st_.ul_queue.front()).size_bytes), true};
  }

  SimTime on_exchange(SimTime now) override {
    const std::uint64_t pkt = st_.ul_queue.front();
    const SimTime data = net_.frames.su_data(net_.ledger.at(pkt).size_bytes);
    const SimTime sifs = net_.frames.profile().sifs;
    const SimTime ack = net_.frames.ack();
    ++net_.res.edca_ul_frames;
    net_.proto(id_, "edca_tx", "pkt=" + std::to_string(pkt));
    net_.kernel.schedule(
        now + data,
        [this, pkt] {
          st_.ul_queue.pop_front();
          net_.ul_received(pkt, net_.kernel.now());
        },
        "edca_data_end", id_);
    net_.kernel.schedule(now + data + sifs + ack, [this] { on_ack(); }, "ack_end", id_);
    return data + sifs + ack;
  }

  void on_collision(SimTime /*now*/, bool dropped) override {
    in_exchange_ = false;
    if (dropped) {
      const std::uint64_t pkt = st_.ul_queue.front();
      st_.ul_queue.pop_front();
      net_.ledger.drop(pkt);
      net_.proto(id_, "drop", "pkt=" + std::to_string(pkt));
    }
    maybe_contend();
  }

  // Data left through a trigger-based exchange.
  void on_ofdma_sent(int packets) {
    const bool head_left = packets > 0;
    for (int i = 0; i < packets; ++i) st_.ul_queue.pop_front();
    if (head_left) net_.channel.reset_backoff(id_);
    if (st_.ul_queue.empty()) net_.channel.withdraw(id_);
  }

  void on_multi_sta_ba() {
    if (!net_.beh.uses_mu_edca) return;
    const bool was_enabled = st_.edca_enabled;
    sta_on_ofdma_success(st_, net_.kernel.now(), net_.beh.mu_edca_timer);
    net_.channel.withdraw(id_);
    net_.proto(id_, was_enabled ? "edca_disable" : "edca_timer_reset",
               "until=" + std::to_string(st_.mu_edca_deadline->ns()));
    arm_timer();
  }

 private:
  void on_ack() {
    in_exchange_ = false;
    const SimTime now = net_.kernel.now();
    if (net_.beh.uses_mu_edca) {
      sta_on_ack(st_, now, net_.beh.mu_edca_timer);
      net_.proto(id_, "edca_disable", "until=" + std::to_string(st_.mu_edca_deadline->ns()));
      arm_timer();
    }
    if (net_.beh.ap_sends_triggers && !net_.beh.static_poll_all) {
      if (ap_handle_edca_ul(net_.ap, id_, now)) {
        net_.proto(kApId, "list_add", "sta=" + std::to_string(id_));
      } else {
        net_.proto(kApId, "list_refresh", "sta=" + std::to_string(id_));
      }
      net_.kick_ap_soon();
    }
    maybe_contend();
  }

  void arm_timer() {
    net_.kernel.cancel(timer_);
    timer_ = net_.kernel.schedule(
        *st_.mu_edca_deadline,
        [this] {
          timer_ = {};
          const bool go = sta_timer_expired(st_, net_.kernel.now());
          net_.proto(id_, "edca_enable");
          if (go) maybe_contend();
        },
        "mu_edca_expiry", id_);
  }

  Impl& net_;
  NodeId id_;
  StaState st_;
  bool in_exchange_ = false;
  EventHandle timer_;
};

class Network::Impl::ApAgent final : public ChannelUser {
 public:
  explicit ApAgent(Impl& net) : net_(net) {}

  void kick() {
    if (in_exchange_ || net_.channel.contending(kApId)) return;
    const bool dl = !net_.ap.dl_queue.empty();
    const bool work = dl || (net_.beh.ap_sends_triggers && !net_.ap.polling_list.empty());
    if (!work) return;
    const SimTime now = net_.kernel.now();
    if (net_.beh.ari_gating && !ari_gate(net_.ap.last_access, now, dl, net_.ap.ari)) {
      if (!net_.kernel.pending(ari_wake_)) {
        ari_wake_ = net_.kernel.schedule(net_.ap.last_access + net_.ap.ari, [this] { kick(); }, "ari", kApId);
      }
      return;
    }
    net_.kernel.cancel(ari_wake_);
    net_.channel.request_access(kApId, net_.cfg.ap_edca, *this);
  }

  std::optional<TxIntent> on_grant(SimTime now) override {
    if (net_.beh.ap_sends_triggers) {
      pending_ = plan_exchange(net_.ap, net_.max_rus);
    } else {
      pending_ = ExchangePlan{};
      pending_.action = net_.ap.dl_queue.empty() ? ExchangePlan::Action::Release : ExchangePlan::Action::Broadcast;
    }
    net_.ap.last_access = now;
    switch (pending_.action) {
      case ExchangePlan::Action::Release:
        commit_exchange(net_.ap, pending_, now);
        net_.proto(kApId, "ap_release");
        net_.kick_ap_soon();
        return std::nullopt;
      case ExchangePlan::Action::Broadcast:
        in_exchange_ = true;
        return TxIntent{net_.frames.su_data(net_.ap.dl_queue.front().bytes), false};
      case ExchangePlan::Action::UlPoll:
        in_exchange_ = true;
        return TxIntent{net_.frames.bsrp_tf(static_cast<int>(pending_.poll_set.size())), true};
    }
    return std::nullopt;
  }

  SimTime on_exchange(SimTime now) override {
    if (pending_.action == ExchangePlan::Action::Broadcast) {
      const DlFrame frame = net_.ap.dl_queue.front();
      commit_exchange(net_.ap, pending_, now);
      const SimTime air = net_.frames.su_data(frame.bytes);
      net_.proto(kApId, "dl_tx", "window=" + std::to_string(frame.window));
      net_.kernel.schedule(
          now + air,
          [this, frame] {
            net_.res.dl.push_back(DlReception{frame.window, frame.enqueued, net_.kernel.now()});
            finish();
          },
          "dl_end", kApId);
      return air;
    }
    commit_exchange(net_.ap, pending_, now);
    return start_ul(now);
  }

  void on_collision(SimTime now, bool /*dropped*/) override {
    in_exchange_ = false;
    if (pending_.action == ExchangePlan::Action::Broadcast) {
      // Broadcasts are sent once; a collision loses the frame.
      const DlFrame frame = net_.ap.dl_queue.front();
      commit_exchange(net_.ap, pending_, now);
      ++net_.res.dl_lost;
      net_.proto(kApId, "dl_lost", "window=" + std::to_string(frame.window));
    } else {
      net_.proto(kApId, "poll_collision");
    }
    kick();
  }

 private:
  SimTime start_ul(SimTime t0) {
    const std::vector<NodeId> polled = pending_.poll_set;
    const SimTime bsrp = net_.frames.bsrp_tf(static_cast<int>(polled.size()));
    const SimTime sifs = net_.frames.profile().sifs;
    ++net_.res.trigger_frames;
    net_.proto(kApId, "bsrp", "polled=" + join_ids(polled));
    net_.kernel.schedule(t0 + bsrp + sifs, [this, t0, polled] { on_bsr(t0, polled); }, "bsr_start", kApId);
    return bsrp + sifs + net_.frames.bsr();
  }

  void on_bsr(SimTime t0, const std::vector<NodeId>& polled) {
    std::vector<PolledBuffer> buffers;
    buffers.reserve(polled.size());
    std::string report;
    for (NodeId sta : polled) {
      PolledBuffer b;
      b.sta = sta;
      for (std::uint64_t id : net_.stas[static_cast<std::size_t>(sta)]->state().ul_queue) {
        const UlPacket& p = net_.ledger.at(id);
        b.mpdu_bytes.push_back(net_.frames.mpdu_bytes(p.size_bytes));
        b.reported_bytes += p.size_bytes;
      }
      if (!report.empty()) report += ',';
      report += std::to_string(sta) + ":" + std::to_string(b.reported_bytes);
      buffers.push_back(std::move(b));
    }
    net_.proto(kApId, "bsr", report);

    const UlExchangeTimeline tl = plan_ul_exchange(net_.frames, net_.cfg.txop, buffers);
    auto ex = std::make_shared<Exchange>();
    ex->outcome.start = t0;
    ex->outcome.end = t0 + tl.duration();
    ex->outcome.polled = polled;
    for (const auto& b : buffers) ex->outcome.reported_bytes.push_back(b.reported_bytes);
    for (std::size_t i = 0; i < tl.grants.size(); ++i) {
      const UlGrant& g = tl.grants[i];
      const auto& queue = net_.stas[static_cast<std::size_t>(g.sta)]->state().ul_queue;
      for (int k = 0; k < g.packets; ++k) ex->packets.push_back(queue[static_cast<std::size_t>(k)]);
      if (g.packets > 0) ex->outcome.delivered.push_back(g.sta);
    }
    for (const UlGrant& g : tl.grants) net_.stas[static_cast<std::size_t>(g.sta)]->on_ofdma_sent(g.packets);

    net_.channel.reserve_until(ex->outcome.end);
    if (tl.has_data()) {
      ++net_.res.trigger_frames;
      net_.proto(kApId, "tf", "granted=" + join_ids(ex->outcome.delivered));
      net_.kernel.schedule(
          t0 + tl.data_end(),
          [this, ex] {
            for (std::uint64_t id : ex->packets) net_.ul_received(id, net_.kernel.now());
          },
          "ofdma_data_end", kApId);
    }
    net_.kernel.schedule(ex->outcome.end, [this, ex] { on_ul_end(*ex); }, "ul_exchange_end", kApId);
  }

  struct Exchange {
    UlExchangeOutcome outcome;
    std::vector<std::uint64_t> packets;
  };

  void on_ul_end(const Exchange& ex) {
    const SimTime now = net_.kernel.now();
    const SimTime duration = ex.outcome.end - ex.outcome.start;
    ++net_.res.ul_exchanges;
    if (!ex.outcome.delivered.empty()) ++net_.res.ul_exchanges_with_data;
    net_.res.max_ul_exchange = std::max(net_.res.max_ul_exchange, duration);
    net_.proto(kApId, "ul_exchange",
               "polled=" + join_ids(ex.outcome.polled) + " delivered=" + join_ids(ex.outcome.delivered) +
                   " duration=" + std::to_string(duration.ns()));
    for (NodeId sta : ex.outcome.delivered) net_.stas[static_cast<std::size_t>(sta)]->on_multi_sta_ba();
    if (net_.beh.static_poll_all) {
      for (std::size_t i = 0; i < ex.outcome.polled.size(); ++i) {
        net_.ap.polling_list.mark_polled(ex.outcome.polled[i], ex.outcome.start, ex.outcome.reported_bytes[i]);
      }
    } else {
      for (NodeId sta : ap_after_ul_exchange(net_.ap, ex.outcome, now, net_.cfg.removal_policy)) {
        net_.proto(kApId, "list_remove", "sta=" + std::to_string(sta));
      }
    }
    finish();
  }

  void finish() {
    in_exchange_ = false;
    kick();
  }

  Impl& net_;
  bool in_exchange_ = false;
  ExchangePlan pending_;
  EventHandle ari_wake_;
};

Network::Impl::Impl(RunConfig c)
    : cfg((c.validate(), std::move(c))),
      beh(configure_scheme(cfg.scheme, cfg.mu_edca_timer, cfg.mu_edca_timer_ofdma)),
      frames(cfg.phy, cfg.frames),
      max_rus(a2psim::max_rus(cfg.phy.bandwidth_mhz, cfg.phy.ru_tones)),
      topo_rng(cfg.seed, StreamId::Topology),
      traffic_rng(cfg.seed, StreamId::Traffic),
      backoff_rng(cfg.seed, StreamId::Backoff),
      channel(kernel, cfg.phy, backoff_rng, cfg.phy.sifs + frames.ack()),
      topo(build_topology(topo_rng, cfg.n_total, cfg.n_initial, cfg.n_joining(), cfg.duration, cfg.on_off)),
      ledger(cfg.audio.delay_budget()),
      server(kernel, cfg.audio.delay_budget(), [this](std::int64_t w, SimTime at) { on_dl_ready(w, at); }),
      driver(kernel, topo, cfg.audio, traffic_rng, server, [this](UlPacket p) { on_generate(std::move(p)); }) {
  if (beh.ap_sends_triggers) check_txop_feasible(frames, cfg.txop, max_rus, cfg.audio.ul_packet_bytes());
  kernel.trace().set_level(cfg.trace);
  ap.ari = cfg.ari;
  ap.mu_edca_timer = beh.mu_edca_timer;
  if (beh.static_poll_all) {
    for (NodeId sta = 1; sta <= cfg.n_total; ++sta) ap.polling_list.upsert(sta, SimTime::max());
  }
  ap_agent = std::make_unique<ApAgent>(*this);
  stas.resize(static_cast<std::size_t>(cfg.n_total) + 1);
  for (NodeId sta = 1; sta <= cfg.n_total; ++sta) {
    stas[static_cast<std::size_t>(sta)] = std::make_unique<StaAgent>(*this, sta);
  }
  res.config = cfg;
}

void Network::Impl::start() {
  if (started) throw std::logic_error("network already started");
  started = true;
  driver.start(cfg.duration);
  ap_agent->kick();
}

void Network::Impl::on_generate(UlPacket p) {
  p.id = ledger.packets().size();
  const std::uint64_t id = p.id;
  const NodeId sta = p.sta;
  wakeup.on_generated(p);
  proto(sta, "gen", "pkt=" + std::to_string(id) + " window=" + std::to_string(p.window));
  ledger.add(std::move(p));
  stas.at(static_cast<std::size_t>(sta))->enqueue(id);
}

void Network::Impl::ul_received(std::uint64_t id, SimTime at) {
  const Disposition d = ledger.deliver(id, at);
  const UlPacket& p = ledger.at(id);
  wakeup.on_ap_rx(p, at);
  proto(kApId, "ap_rx", "pkt=" + std::to_string(id) + " sta=" + std::to_string(p.sta) + " " + std::string(to_string(d)));
  server.on_ul_arrival(p.sta, p.window, d == Disposition::DeliveredOnTime);
}

void Network::Impl::on_dl_ready(std::int64_t window, SimTime at) {
  ++res.dl_generated;
  ap.dl_queue.push_back(DlFrame{window, cfg.audio.dl_packet_bytes(), at});
  proto(kApId, "dl_enqueue", "window=" + std::to_string(window));
  kick_ap_soon();
}

void Network::Impl::kick_ap_soon() {
  kernel.schedule(kernel.now(), [this] { ap_agent->kick(); }, "ap_kick", kApId);
}

Network::Network(RunConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}
Network::~Network() = default;

Kernel& Network::kernel() { return impl_->kernel; }
Channel& Network::channel() { return impl_->channel; }
const Topology& Network::topology() const { return impl_->topo; }
const ApState& Network::ap() const { return impl_->ap; }
const StaState& Network::sta(NodeId id) const { return impl_->stas.at(static_cast<std::size_t>(id))->state(); }
const PacketLedger& Network::ledger() const { return impl_->ledger; }

void Network::start() { impl_->start(); }

void Network::run() {
  if (!impl_->started) impl_->start();
  impl_->kernel.run_until(impl_->cfg.duration);
}

void Network::inject_packet(NodeId sta, SimTime gen_time, std::int64_t window) {
  if (sta < 1 || sta > impl_->cfg.n_total) throw std::out_of_range("inject_packet: no such STA");
  UlPacket p;
  p.sta = sta;
  p.window = window;
  p.gen_time = gen_time;
  p.size_bytes = impl_->cfg.audio.ul_packet_bytes();
  impl_->kernel.schedule(gen_time, [impl = impl_.get(), p] { impl->on_generate(p); }, "ul_generate", sta);
}

RunResult Network::result() const {
  RunResult r = impl_->res;
  r.packets.assign(impl_->ledger.packets().begin(), impl_->ledger.packets().end());
  r.wakeups.assign(impl_->wakeup.samples().begin(), impl_->wakeup.samples().end());
  r.channel = impl_->channel.stats();
  return r;
}

RunResult simulate(const RunConfig& config) {
  Network net(config);
  net.run();
  return net.result();
}

}  // namespace a2psim
