def load(path):
    try:
        handle = open(path)
    except FileNotFoundError:
        return None
    except (PermissionError, IsADirectoryError) as err:
        raise RuntimeError(path) from err
    else:
        return handle.read()
    finally:
        print('done')
