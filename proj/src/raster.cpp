#include "kleinian/raster.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace kleinian {

namespace {

bool degenerate(const slice_spec& spec)
{
    return spec.width <= 0 || spec.height <= 0 || !(spec.x1 > spec.x0) || !(spec.y1 > spec.y0);
}

battery_context context_for(const slice_spec& spec)
{
    return make_battery(spec.beta, spec.beta_prime,
                        spec.words.empty() ? default_battery_words() : spec.words);
}

cplx pixel_center(const slice_spec& spec, double dx, double dy, int i, int j)
{
    return {spec.x0 + (i + 0.5) * dx, spec.y1 - (j + 0.5) * dy};
}

void paint_marked_points(slice_raster& raster, double dx, double dy)
{
    const slice_spec& spec = raster.spec;
    for (const cplx& point : spec.marked_points) {
        const int i = static_cast<int>(std::floor((point.real() - spec.x0) / dx));
        const int j = static_cast<int>(std::floor((spec.y1 - point.imag()) / dy));
        if (i >= 0 && i < raster.width && j >= 0 && j < raster.height)
            raster.cells[static_cast<std::size_t>(j) * raster.width + i] =
                verdict::marked_discrete;
    }
}

nlohmann::json cplx_json(cplx z)
{
    return nlohmann::json::array({z.real(), z.imag()});
}

} // namespace

slice_raster rasterize_slice(const slice_spec& spec)
{
    slice_raster raster;
    raster.spec = spec;
    if (degenerate(spec))
        return raster;
    raster.width = spec.width;
    raster.height = spec.height;
    raster.cells.assign(static_cast<std::size_t>(spec.width) * spec.height, verdict::unknown);

    const battery_context ctx = context_for(spec);
    const double dx = (spec.x1 - spec.x0) / spec.width;
    const double dy = (spec.y1 - spec.y0) / spec.height;

#pragma omp parallel for schedule(static)
    for (int j = 0; j < spec.height; ++j)
        for (int i = 0; i < spec.width; ++i)
            raster.cells[static_cast<std::size_t>(j) * spec.width + i] =
                evaluate_battery(ctx, pixel_center(spec, dx, dy, i, j));

    paint_marked_points(raster, dx, dy);
    return raster;
}

slice_raster rasterize_slice_serial(const slice_spec& spec)
{
    slice_raster raster;
    raster.spec = spec;
    if (degenerate(spec))
        return raster;
    raster.width = spec.width;
    raster.height = spec.height;
    raster.cells.assign(static_cast<std::size_t>(spec.width) * spec.height, verdict::unknown);

    const battery_context ctx = context_for(spec);
    const double dx = (spec.x1 - spec.x0) / spec.width;
    const double dy = (spec.y1 - spec.y0) / spec.height;

    for (int j = 0; j < spec.height; ++j)
        for (int i = 0; i < spec.width; ++i)
            raster.cells[static_cast<std::size_t>(j) * spec.width + i] =
                evaluate_battery(ctx, pixel_center(spec, dx, dy, i, j));

    paint_marked_points(raster, dx, dy);
    return raster;
}

void write_ppm(const slice_raster& raster, std::ostream& out)
{
    static constexpr unsigned char palette[4][3] = {
        {255, 0, 0},     /* excluded */
        {0, 0, 255},     /* free_product */
        {255, 255, 255}, /* unknown */
        {0, 0, 0},       /* marked_discrete */
    };
    out << "P6\n" << raster.width << " " << raster.height << "\n255\n";
    std::vector<unsigned char> bytes;
    bytes.reserve(raster.cells.size() * 3);
    for (const verdict v : raster.cells) {
        const unsigned char* color = palette[static_cast<unsigned char>(v)];
        bytes.push_back(color[0]);
        bytes.push_back(color[1]);
        bytes.push_back(color[2]);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

void write_ppm(const slice_raster& raster, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_ppm: cannot open " + path);
    write_ppm(raster, out);
    out.flush();
    if (!out)
        throw std::runtime_error("write_ppm: short write to " + path);
}

std::string raster_sidecar_json(const slice_raster& raster)
{
    const slice_spec& spec = raster.spec;
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "slice_raster";
    doc["beta"] = cplx_json(spec.beta);
    doc["beta_prime"] = cplx_json(spec.beta_prime);
    doc["window"] = {{"x0", spec.x0}, {"x1", spec.x1}, {"y0", spec.y0}, {"y1", spec.y1}};
    doc["width"] = raster.width;
    doc["height"] = raster.height;

    nlohmann::json words = nlohmann::json::array();
    if (spec.words.empty()) {
        for (const good_word& w : default_battery_words())
            words.push_back(word_to_string(w.word));
    } else {
        for (const good_word& w : spec.words)
            words.push_back(word_to_string(w.word));
    }
    doc["words"] = words;

    nlohmann::json marks = nlohmann::json::array();
    for (const cplx& point : spec.marked_points)
        marks.push_back(cplx_json(point));
    doc["marked_points"] = marks;

    doc["palette"] = {{"excluded", {255, 0, 0}},
                      {"free_product", {0, 0, 255}},
                      {"unknown", {255, 255, 255}},
                      {"marked_discrete", {0, 0, 0}}};

    nlohmann::json disks = nlohmann::json::array();
    for (const exclusion_disk& disk : slice_excluded_disks(spec.beta)) {
        nlohmann::json entry;
        entry["center"] = cplx_json(disk.center);
        entry["radius"] = disk.radius;
        nlohmann::json exceptions = nlohmann::json::array();
        for (const cplx& e : disk.exceptional_centers)
            exceptions.push_back(cplx_json(e));
        entry["exceptional_centers"] = exceptions;
        entry["provenance"] = disk.provenance;
        disks.push_back(entry);
    }
    doc["disks"] = disks;

    return doc.dump(2);
}

} // namespace kleinian
