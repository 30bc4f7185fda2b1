// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/sim/link.hpp"

#include <cmath>
#include <random>

#include <fmt/format.h>

#include "nrpusch/channel/fading.hpp"
#include "nrpusch/channel/impairments.hpp"
#include "nrpusch/ldpc/decoder.hpp"
#include "nrpusch/random.hpp"
#include "nrpusch/receiver/demapper.hpp"
#include "nrpusch/receiver/equalizer.hpp"
#include "nrpusch/receiver/sync.hpp"
#include "nrpusch/transport/rate_match.hpp"
#include "nrpusch/waveform/filter.hpp"
#include "nrpusch/waveform/gold.hpp"
#include "nrpusch/waveform/ofdm.hpp"

namespace nrpusch::sim {

using waveform::TimeSignal;

SlotResult& SlotResult::operator+=(const SlotResult& o)
{
    blocks += o.blocks;
    block_errors += o.block_errors;
    coded_bits += o.coded_bits;
    coded_bit_errors += o.coded_bit_errors;
    info_bits += o.info_bits;
    info_bit_errors += o.info_bit_errors;
    decoded_blocks += o.decoded_blocks;
    iterations += o.iterations;
    evm_pct += o.evm_pct;
    return *this;
}

namespace {

// Dummy payload used only to learn the segmentation layout.
transport::CodeBlockSet layout_for(const McsEntry& mcs)
{
    return transport::segment(transport::TransportBlock(Bits(mcs.tbs, 0)), mcs.code_rate);
}

} // namespace

receiver::ChannelEstimate true_channel(const channel::ChannelRealization& real, const SimConfig& cfg,
                                       int group_delay, cf64 phase)
{
    const auto& num = cfg.numerology;
    const auto& p = cfg.pusch;
    const int n_sc = p.n_subcarriers();
    const int advance = num.cp_short() / 2;
    receiver::ChannelEstimate est;
    est.n_rx = real.n_rx();
    est.n_tx = real.n_tx();
    est.kind = receiver::EstimatorKind::genie;
    est.planes.assign(static_cast<std::size_t>(est.n_rx * est.n_tx), GridPlane::Zero(waveform::kSymbolsPerSlot, n_sc));

    const auto& delays = real.delays();
    // per tap and subcarrier: e^{-j 2 pi bin d / N}
    Eigen::MatrixXcd ramp(static_cast<Eigen::Index>(delays.size()), n_sc);
    for (std::size_t d = 0; d < delays.size(); ++d)
        for (int k = 0; k < n_sc; ++k)
            ramp(static_cast<Eigen::Index>(d), k) =
                phase * std::polar(1.0, -2 * kPi * waveform::fft_bin(p, k) * delays[d] / num.n_fft);

    for (int l = 0; l < waveform::kSymbolsPerSlot; ++l) {
        // gains are indexed by channel output sample, before the timing offset
        const double centre = group_delay + num.symbol_start(p.slot_number, l)
                              + num.cp_length(p.slot_number, l) - advance + num.n_fft / 2;
        for (int r = 0; r < est.n_rx; ++r)
            for (int t = 0; t < est.n_tx; ++t) {
                Eigen::RowVectorXcd g(static_cast<Eigen::Index>(delays.size()));
                for (std::size_t d = 0; d < delays.size(); ++d)
                    g[static_cast<Eigen::Index>(d)] = real.gain(r, t, static_cast<int>(d), centre);
                est.at(r, t).row(l) = g * ramp;
            }
    }
    return est;
}

LinkSimulator::LinkSimulator(const SimConfig& cfg) : cfg_(cfg), mcs_(lookup_mcs(cfg.pusch.mcs_index))
{
    cfg_.validate();
    const auto dir = cfg_.resolved_data_dir();
    const auto layout = layout_for(mcs_);
    n_blocks_ = layout.count;

    const int set = ldpc::lifting_set_index(layout.lifting);
    code_ = ldpc::build_code(ldpc::load_base_graph(dir, layout.base_graph, set), layout.lifting);
    const auto bg_path = ldpc::base_graph_path(dir, layout.base_graph, set);
    checksums_[bg_path.filename().string()] = sha256_hex(read_file(bg_path));

    const int qm = waveform::bits_per_symbol(mcs_.modulation);
    const long g_bits = static_cast<long>(qm) * cfg_.pusch.n_layers * cfg_.pusch.data_res_per_layer();
    if (static_cast<double>(layout.count) * layout.k_prime > 0.95 * static_cast<double>(g_bits))
        throw Error(fmt::format("MCS {} does not fit the allocation ({} coded bits)", mcs_.index, g_bits));

    if (cfg_.filter_taps > 0)
        tx_filter_ = waveform::design_tx_filter(cfg_.numerology, cfg_.pusch.n_prb, cfg_.bandwidth_hz,
                                                cfg_.filter_taps);
    if (cfg_.fading()) {
        profile_ = channel::load_tdl_profile(dir, cfg_.channel);
        std::string lower = cfg_.channel;
        for (auto& ch : lower)
            ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        const auto p = dir / "tdl" / (lower + ".csv");
        checksums_[p.filename().string()] = sha256_hex(read_file(p));
    }
    if (cfg_.estimator == receiver::EstimatorKind::mmse) {
        const auto& p = cfg_.pusch;
        const int pilots = (p.n_subcarriers() + p.dmrs_spacing - 1) / p.dmrs_spacing;
        mmse_.emplace(receiver::uniform_pdp_covariance(pilots, p.dmrs_spacing, cfg_.numerology.n_fft,
                                                       cfg_.numerology.cp_short()));
    }
}

SlotResult LinkSimulator::run_slot(double snr_db, std::uint64_t seed, SlotTrace* trace) const
{
    const auto& num = cfg_.numerology;
    const auto& pc = cfg_.pusch;
    const int qm = waveform::bits_per_symbol(mcs_.modulation);
    const int layers = pc.n_layers;

    // transmitter
    std::mt19937_64 payload_rng(derive_seed(seed, {0}));
    Bits payload(static_cast<std::size_t>(mcs_.tbs));
    for (auto& b : payload)
        b = payload_rng() & 1;
    const transport::TransportBlock tb(payload);
    const auto set = transport::segment(tb, mcs_.code_rate);
    const auto cb = transport::CircularBuffer::for_code(code_);
    const int g_bits = qm * layers * pc.data_res_per_layer();
    const auto e_sizes = transport::block_e_sizes(g_bits, set.count, layers, qm);

    Bits coded;
    coded.reserve(static_cast<std::size_t>(g_bits));
    std::vector<std::uint8_t> cw_filler;  // same for every block
    for (int c = 0; c < set.count; ++c) {
        const auto cw = ldpc::encode(code_, set.blocks[c]);
        if (c == 0)
            cw_filler = cw.filler;
        const auto rm = transport::rate_match(cw, cb, e_sizes[c], 0, qm);
        coded.insert(coded.end(), rm.begin(), rm.end());
    }
    const Bits scrambled = waveform::scramble(coded, pc.scrambling_seed);
    const auto grid = waveform::build_grid(waveform::map_symbols(scrambled, mcs_.modulation), pc);
    TimeSignal sig = waveform::ofdm_modulate(grid, pc, num);
    if (tx_filter_.size() > 0)
        sig = waveform::apply_filter(sig, tx_filter_);
    if (cfg_.sto_samples != 0) {
        // zero tail so a delayed slot is not cut short
        const Eigen::Index len = sig.length();
        sig.samples.conservativeResize(Eigen::NoChange, len + std::abs(cfg_.sto_samples));
        sig.samples.rightCols(std::abs(cfg_.sto_samples)).setZero();
    }

    // channel
    const int max_delay = profile_ ? profile_->delay_samples(sig.sample_rate).back() : 0;
    const auto real = profile_ ? channel::generate_fading(*profile_, cfg_.doppler_hz, sig.length() + max_delay,
                                                           cfg_.n_rx, layers, sig.sample_rate,
                                                           derive_seed(seed, {1}))
                               : channel::ChannelRealization::flat(
                                     Eigen::MatrixXcd::Identity(cfg_.n_rx, layers), sig.length(), sig.sample_rate);
    channel::ImpairmentSpec imp;
    imp.snr_db = snr_db;
    imp.cfo_hz = cfg_.cfo_hz;
    imp.sto_samples = cfg_.sto_samples;
    imp.bandwidth_fraction = static_cast<double>(pc.n_subcarriers()) / num.n_fft;
    std::mt19937_64 noise_rng(derive_seed(seed, {2}));
    const TimeSignal rx_sig = channel::apply_channel(sig, real, imp, noise_rng);

    // receiver
    SlotResult res;
    receiver::ChannelEstimate est;
    double rho = 0.0;
    waveform::ResourceGrid rx;
    if (cfg_.genie) {
        // known timing and frequency: the windows follow the true delay, the residual CFO is removed
        rx = waveform::ofdm_demodulate(rx_sig, pc, num, waveform::DemodOptions{-1, cfg_.sto_samples});
        if (cfg_.cfo_hz != 0.0) {
            receiver::SyncEstimate known;
            known.cfo_hz = cfg_.cfo_hz;
            rx = receiver::correct_sync(rx, known, pc, num);
        }
        double p_ref = 0.0;
        for (int t = 0; t < sig.n_antennas(); ++t)
            p_ref += channel::signal_power(sig, t);
        p_ref /= sig.n_antennas();
        const double n0 = channel::noise_variance(p_ref, snr_db, imp.bandwidth_fraction);
        rho = n0 > 0 ? std::min(1.0 / n0, std::pow(10.0, receiver::kRhoMaxDb / 10)) : std::pow(10.0, receiver::kRhoMaxDb / 10);
        const double lead = static_cast<double>(sig.group_delay + cfg_.sto_samples);
        est = true_channel(real, cfg_, sig.group_delay,
                           std::polar(1.0, 2 * kPi * cfg_.cfo_hz * lead / sig.sample_rate));
    } else {
        rx = waveform::ofdm_demodulate(rx_sig, pc, num);
        const auto sync = receiver::estimate_sync(rx, pc, num);
        rx = receiver::correct_sync(rx, sync, pc, num);
        const auto ls = receiver::estimate_ls(rx, pc);
        const auto snr = receiver::estimate_snr(ls);
        rho = snr.rho;
        est = receiver::interpolate_estimate(mmse_ ? receiver::estimate_mmse(ls, snr, *mmse_) : ls, pc);
        if (trace) {
            trace->snr_estimate_db = snr.rho_db();
            trace->cfo_estimate_hz = sync.cfo_hz;
            trace->sto_estimate_samples = sync.sto_samples;
        }
    }
    res.evm_pct = receiver::dmrs_evm_percent(rx, est, pc);
    const auto eq = receiver::equalize_mmse(rx, est, rho, pc);
    auto llr = receiver::demap_llr(eq.symbols, eq.noise_var, mcs_.modulation);
    receiver::descramble_llr(llr, pc.scrambling_seed);

    res.coded_bits = static_cast<long>(coded.size());
    for (std::size_t i = 0; i < coded.size(); ++i)
        res.coded_bit_errors += (llr[i] < 0) != static_cast<bool>(coded[i]);

    ldpc::DecoderOptions dec;
    dec.max_iterations = cfg_.decoder_iterations;
    dec.mode = cfg_.boxplus;
    dec.prune_erased_checks = true;
    std::vector<Bits> decoded;
    decoded.reserve(static_cast<std::size_t>(set.count));
    std::size_t offset = 0;
    for (int c = 0; c < set.count; ++c) {
        const auto e = static_cast<std::size_t>(e_sizes[c]);
        const std::span<const double> part(llr.data() + offset, e);
        offset += e;
        const auto buf = transport::rate_recover(
            part, transport::RateMatchBuffer(cb, cw_filler, e_sizes[c]), 0, qm);
        const auto out = ldpc::decode<float>(code_, buf.decoder_input(), dec);
        res.iterations += out.iterations;
        ++res.decoded_blocks;
        decoded.emplace_back(out.bits.begin(), out.bits.begin() + set.k);
    }
    const auto back = transport::desegment(decoded, set);

    const bool tb_ok = transport::check_crc(back.transport_bits, tb.crc_kind());
    res.blocks = set.count;
    if (set.count == 1)
        res.block_errors = tb_ok ? 0 : 1;
    else
        for (auto ok : back.block_ok)
            res.block_errors += ok ? 0 : 1;
    res.info_bits = mcs_.tbs;
    for (int i = 0; i < mcs_.tbs; ++i)
        res.info_bit_errors += back.transport_bits[i] != payload[i];

    if (trace)
        trace->estimate = std::move(est);
    return res;
}

} // namespace nrpusch::sim
