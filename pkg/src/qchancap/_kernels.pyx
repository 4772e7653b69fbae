# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Kraus application, Hermitian eigenvalues, entropy,
and the fused coherent-information objective.

Semantics mirror _kernels_py exactly; BLAS/LAPACK is called directly to cut
per-call overhead on the small matrices the optimizer and the Monte Carlo
loops grind through.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport log2, sqrt
from scipy.linalg.cython_blas cimport zgemm, zgerc
from scipy.linalg.cython_lapack cimport zheevd

from .errors import ValidationError

cnp.import_array()

NAME = "compiled"

cdef double PSD_FLOOR = -1e-10
cdef double ENTROPY_CUTOFF = 1e-12

ctypedef double complex zdouble


cdef void _matmul(zdouble* a, zdouble* b, zdouble* c,
                  int m, int k, int n) noexcept nogil:
    # C-order C[m,n] = A[m,k] @ B[k,n]: compute C^T = B^T A^T in Fortran view.
    cdef zdouble one = 1.0
    cdef zdouble zero = 0.0
    zgemm("N", "N", &n, &m, &k, &one, b, &n, a, &k, &zero, c, &n)


cdef void _matmul_bdag(zdouble* a, zdouble* b, zdouble* c,
                       int m, int k, int n) noexcept nogil:
    # C-order C[m,n] = A[m,k] @ B^dag for B stored C-order with shape (n, k).
    cdef zdouble one = 1.0
    cdef zdouble zero = 0.0
    zgemm("C", "N", &n, &m, &k, &one, b, &k, a, &k, &zero, c, &n)


cdef int _eigvals_inplace(zdouble* a, double* w, int n, bint vectors):
    """zheevd on the Fortran view of the buffer at `a`.

    With vectors=True the Fortran columns of `a` become eigenvectors, which
    read as rows of the C-order view.
    """
    cdef int info = 0
    cdef int lwork, lrwork, liwork
    if vectors:
        lwork = 2 * n + n * n
        lrwork = 1 + 5 * n + 2 * n * n
        liwork = 3 + 5 * n
    else:
        lwork = n + 1
        lrwork = n
        liwork = 1
    work_arr = np.empty(lwork, dtype=np.complex128)
    rwork_arr = np.empty(lrwork, dtype=np.float64)
    iwork_arr = np.empty(liwork, dtype=np.int32)
    cdef zdouble* work = <zdouble*> cnp.PyArray_DATA(work_arr)
    cdef double* rwork = <double*> cnp.PyArray_DATA(rwork_arr)
    cdef int* iwork = <int*> cnp.PyArray_DATA(iwork_arr)
    with nogil:
        if vectors:
            zheevd("V", "L", &n, a, &n, w, work, &lwork,
                   rwork, &lrwork, iwork, &liwork, &info)
        else:
            zheevd("N", "L", &n, a, &n, w, work, &lwork,
                   rwork, &lrwork, iwork, &liwork, &info)
    return info


cdef double _entropy_from_w(double* w, int n) except? -1.0:
    cdef double total = 0.0
    cdef double v
    cdef int i
    for i in range(n):
        v = w[i]
        if v < PSD_FLOOR:
            raise ValidationError(
                f"matrix is not PSD: eigenvalue {v:.3e} below {PSD_FLOOR:.1e}"
            )
        if v > ENTROPY_CUTOFF:
            total -= v * log2(v)
    return total


def kraus_apply(kraus, m):
    """sum_k K[k] @ m @ K[k]^dag for a stacked (K, dout, din) Kraus array."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=3, mode="c"] ks = \
        np.ascontiguousarray(kraus, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2, mode="c"] mm = \
        np.ascontiguousarray(m, dtype=np.complex128)
    cdef int nk = ks.shape[0]
    cdef int dout = ks.shape[1]
    cdef int din = ks.shape[2]
    out_arr = np.zeros((dout, dout), dtype=np.complex128)
    t_arr = np.empty((dout, din), dtype=np.complex128)
    term_arr = np.empty((dout, dout), dtype=np.complex128)
    cdef zdouble* outp = <zdouble*> cnp.PyArray_DATA(out_arr)
    cdef zdouble* tp = <zdouble*> cnp.PyArray_DATA(t_arr)
    cdef zdouble* termp = <zdouble*> cnp.PyArray_DATA(term_arr)
    cdef zdouble* mp = <zdouble*> cnp.PyArray_DATA(mm)
    cdef zdouble* base = <zdouble*> cnp.PyArray_DATA(ks)
    cdef zdouble* kp
    cdef int k, i
    with nogil:
        for k in range(nk):
            kp = base + k * dout * din
            _matmul(kp, mp, tp, dout, din, din)
            _matmul_bdag(tp, kp, termp, dout, din, dout)
            for i in range(dout * dout):
                outp[i] = outp[i] + termp[i]
    return out_arr


def hermitian_eigenvalues(m):
    """Eigenvalues of a Hermitian matrix, ascending."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2, mode="c"] a = \
        np.array(m, dtype=np.complex128, order="C", copy=True)
    cdef int n = a.shape[0]
    w_arr = np.empty(n, dtype=np.float64)
    # The C buffer read in Fortran order is the transpose = conjugate of a
    # Hermitian matrix, which has the same real spectrum.
    cdef int info = _eigvals_inplace(<zdouble*> cnp.PyArray_DATA(a),
                                     <double*> cnp.PyArray_DATA(w_arr), n, False)
    if info != 0:
        raise ValidationError(f"eigenvalue solver failed (zheevd info={info})")
    return w_arr


def entropy_bits(m):
    """Von Neumann entropy in bits of a Hermitian PSD matrix."""
    w_arr = hermitian_eigenvalues(m)
    cdef cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] w = w_arr
    return _entropy_from_w(<double*> cnp.PyArray_DATA(w), w.shape[0])


def coherent_info_values(kraus, rho):
    """(output entropy, joint output/reference entropy) for one channel use."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=3, mode="c"] ks = \
        np.ascontiguousarray(kraus, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2, mode="c"] rr = \
        np.ascontiguousarray(rho, dtype=np.complex128)
    cdef int nk = ks.shape[0]
    cdef int dout = ks.shape[1]
    cdef int d = ks.shape[2]
    cdef int jdim = dout * d
    cdef int info, i, j, k

    cdef double s_out = entropy_bits(kraus_apply(ks, rr))

    # Eigensystem of rho: feed the transposed buffer so LAPACK sees rho
    # itself; eigenvectors come back as C-order rows of `evec`.
    cdef cnp.ndarray[cnp.complex128_t, ndim=2, mode="c"] evec = \
        np.ascontiguousarray(rr.T.copy())
    p_arr = np.empty(d, dtype=np.float64)
    cdef double* p = <double*> cnp.PyArray_DATA(p_arr)
    info = _eigvals_inplace(<zdouble*> cnp.PyArray_DATA(evec), p, d, True)
    if info != 0:
        raise ValidationError(f"eigenvalue solver failed (zheevd info={info})")
    cdef double pv
    for i in range(d):
        pv = p[i]
        if pv < PSD_FLOOR:
            raise ValidationError(
                f"matrix is not PSD: eigenvalue {pv:.3e} below {PSD_FLOOR:.1e}"
            )
        p[i] = sqrt(pv) if pv > 0.0 else 0.0

    # Purification amplitude matrix V[a, b] = sum_i sqrt(p_i) phi_i[a] phi_i[b]
    # with phi_i the rows of evec, i.e. V = evec^T @ (sqrt(p) * evec).
    scaled_arr = evec.copy()
    cdef zdouble* sp = <zdouble*> cnp.PyArray_DATA(scaled_arr)
    cdef zdouble* ep = <zdouble*> cnp.PyArray_DATA(evec)
    for i in range(d):
        for j in range(d):
            sp[i * d + j] = sp[i * d + j] * p[i]
    v_arr = np.empty((d, d), dtype=np.complex128)
    cdef zdouble* vp = <zdouble*> cnp.PyArray_DATA(v_arr)
    cdef zdouble one = 1.0
    cdef zdouble zero = 0.0
    with nogil:
        # Fortran view: V_F = scaled_F @ evec_F^T.
        zgemm("N", "T", &d, &d, &d, &one, sp, &d, ep, &d, &zero, vp, &d)

    # Joint state spectrum: accumulate sum_k vec(K V) vec(K V)^dag as rank-1
    # updates in a Fortran buffer; the spectrum is what matters and it is
    # unchanged under transposition/conjugation of the Hermitian result.
    joint_arr = np.zeros((jdim, jdim), dtype=np.complex128)
    wvec_arr = np.empty(jdim, dtype=np.complex128)
    cdef zdouble* jp = <zdouble*> cnp.PyArray_DATA(joint_arr)
    cdef zdouble* wp = <zdouble*> cnp.PyArray_DATA(wvec_arr)
    cdef zdouble* base = <zdouble*> cnp.PyArray_DATA(ks)
    cdef zdouble* kp
    cdef int incr = 1
    with nogil:
        for k in range(nk):
            kp = base + k * dout * d
            _matmul(kp, vp, wp, dout, d, d)
            zgerc(&jdim, &jdim, &one, wp, &incr, wp, &incr, jp, &jdim)

    jw_arr = np.empty(jdim, dtype=np.float64)
    cdef double* jw = <double*> cnp.PyArray_DATA(jw_arr)
    info = _eigvals_inplace(jp, jw, jdim, False)
    if info != 0:
        raise ValidationError(f"eigenvalue solver failed (zheevd info={info})")
    cdef double s_joint = _entropy_from_w(jw, jdim)
    return s_out, s_joint
