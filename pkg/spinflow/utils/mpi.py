class DummyMPICom(object):

    rank = 0
    size = 1

    def barrier(self):
        pass

    def allgather(self, obj):
        return [obj]

try:
    from mpi4py import MPI  # @UnusedImport
except ImportError:
    mpi_comm = DummyMPICom()
else:
    mpi_comm = MPI.COMM_WORLD

MPI_ROOT = 0


def is_mpi_master():
    return (mpi_comm.rank == MPI_ROOT)


def local_share(items):
    "The items handled by this rank (round-robin over the communicator)"
    return [x for n, x in enumerate(items)
            if n % mpi_comm.size == mpi_comm.rank]


def gather_shares(results):
    """
    Collects the per-rank results of `local_share` back into the original
    order on every rank
    """
    shares = mpi_comm.allgather(results)
    merged = []
    for n in range(max(len(s) for s in shares) if shares else 0):
        for share in shares:
            if n < len(share):
                merged.append(share[n])
    return merged
