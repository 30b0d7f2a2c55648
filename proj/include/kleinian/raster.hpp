#pragma once

/* Slice rasterization: per-pixel battery verdicts over a rectangular
 * window in the gamma plane, a fixed-palette binary PPM writer, and a
 * JSON sidecar describing the slice. */

#include <iosfwd>
#include <string>
#include <vector>

#include "kleinian/exclusion.hpp"
#include "kleinian/words.hpp"

namespace kleinian {

struct slice_spec {
    cplx beta{0.0};
    cplx beta_prime{-4.0, 0.0};
    /* window in the gamma plane; x grows rightward, y upward */
    double x0 = -4.0;
    double x1 = 4.0;
    double y0 = -3.0;
    double y1 = 3.0;
    int width = 0;
    int height = 0;
    std::vector<good_word> words; /* empty: use the default battery */
    std::vector<cplx> marked_points; /* painted over their containing pixels */
};

struct slice_raster {
    slice_spec spec;
    int width = 0;
    int height = 0;
    /* row-major, top row (largest y) first */
    std::vector<verdict> cells;

    verdict at(int column, int row) const
    {
        return cells[static_cast<std::size_t>(row) * width + column];
    }
};

/* evaluates the battery at every pixel center
 * (x0 + (i + 0.5) dx, y1 - (j + 0.5) dy), then paints marked points last.
 * A degenerate window or non-positive resolution yields a 0 x 0 raster.
 * Rows are evaluated in parallel when OpenMP is enabled; the output is
 * identical to the serial reference for any thread count. */
slice_raster rasterize_slice(const slice_spec& spec);

/* single-threaded reference implementation with identical output */
slice_raster rasterize_slice_serial(const slice_spec& spec);

/* binary PPM (P6): excluded red, free_product blue, unknown white,
 * marked_discrete black */
void write_ppm(const slice_raster& raster, std::ostream& out);
void write_ppm(const slice_raster& raster, const std::string& path);

/* schema_version, slice parameters, the word list in use, and the shipped
 * disks for the slice */
std::string raster_sidecar_json(const slice_raster& raster);

} // namespace kleinian
